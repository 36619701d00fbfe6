//! Acceptance criteria 1-11. Every check is exact; each criterion prints one
//! PASS/FAIL line and the test fails if any criterion does.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::rngs::StdRng;
use rand::SeedableRng;

use snakechar::lattice::a_monomial;
use snakechar::paths::{extremal_path, gen_paths, move_sites, Direction, Extremal};
use snakechar::qchar::{count_tuples, restricted_character, snake_qchar, verify_theorem_a};
use snakechar::snakes::validate_snake;
use snakechar::tableaux::{
    count_tableaux, cross_check, diagram_from_snake, random_diagram, snake_from_diagram, tableaux_qchar, Column,
};
use snakechar::{Kind, LatticePoint, Letter, LieType, Path, QCharacter, SkewDiagram, SkewTableau, Snake, YMonomial};

type Check = Result<(), String>;
type Criterion = fn(&mut Shared) -> Check;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn mono(s: &str) -> YMonomial {
    s.parse().unwrap_or_else(|e| panic!("bad monomial {s}: {e}"))
}

/// `[(i,k,e)]` to a monomial.
fn m(triples: &[(usize, i64, i64)]) -> YMonomial {
    YMonomial::from_triples(triples.iter().copied())
}

fn snake(t: LieType, s: &str) -> Snake {
    Snake::parse(t, s).unwrap()
}

fn contains(qc: &QCharacter, mono: &YMonomial, label: &str) -> Check {
    ensure(qc.contains(mono), || format!("{label}: missing {mono}"))
}

/// Characters computed once and shared between criteria.
struct Shared {
    computed: Vec<(Snake, QCharacter)>,
}

impl Shared {
    fn qchar(&mut self, t: LieType, s: &str) -> QCharacter {
        let sn = snake(t, s);
        if let Some((_, qc)) = self.computed.iter().find(|(x, _)| *x == sn) {
            return qc.clone();
        }
        let qc = snake_qchar(&sn).unwrap();
        self.computed.push((sn, qc.clone()));
        qc
    }
}

fn criterion_1(sh: &mut Shared) -> Check {
    let qc = sh.qchar(LieType::a(4), "2,1");
    ensure(qc.len() == 10, || format!("{} terms, expected 10", qc.len()))?;
    contains(&qc, &m(&[(2, 1, 1)]), "A4")?;
    contains(&qc, &m(&[(1, 4, -1), (2, 3, 1), (4, 5, -1)]), "A4")
}

fn criterion_2(sh: &mut Shared) -> Check {
    let qc = sh.qchar(LieType::b(4), "1,0");
    let want: BTreeSet<YMonomial> = [
        m(&[(1, 0, 1)]),
        m(&[(2, 2, 1), (1, 4, -1)]),
        m(&[(3, 4, 1), (2, 6, -1)]),
        m(&[(4, 5, 1), (4, 7, 1), (3, 8, -1)]),
        m(&[(4, 5, 1), (4, 9, -1)]),
        m(&[(4, 7, -1), (4, 9, -1), (3, 6, 1)]),
        m(&[(3, 10, -1), (2, 8, 1)]),
        m(&[(2, 12, -1), (1, 10, 1)]),
        m(&[(1, 14, -1)]),
    ]
    .into_iter()
    .collect();
    let got: BTreeSet<YMonomial> = qc.terms.keys().cloned().collect();
    ensure(got == want && qc.is_thin(), || format!("got {got:?}"))
}

fn criterion_3(sh: &mut Shared) -> Check {
    let qc = sh.qchar(LieType::b(4), "4,1");
    ensure(qc.len() == 16, || format!("{} terms, expected 16", qc.len()))?;
    contains(&qc, &m(&[(4, 1, 1)]), "B4 spin")?;
    contains(&qc, &m(&[(4, 3, -1), (3, 2, 1)]), "B4 spin")?;
    contains(&qc, &m(&[(4, 7, -1), (3, 6, 1), (2, 8, -1), (1, 6, 1)]), "B4 spin")
}

fn criterion_4(sh: &mut Shared) -> Check {
    let qc = sh.qchar(LieType::b(4), "4,1;4,3");
    contains(&qc, &m(&[(1, 8, 1), (3, 12, -1), (4, 11, 1), (4, 9, 1), (2, 12, -1)]), "B4 (4,1)(4,3)")?;
    let forbidden = m(&[(1, 8, 1), (3, 12, -1), (4, 11, 1), (4, 15, -1)]);
    ensure(!qc.contains(&forbidden), || format!("overlapping product {forbidden} present"))
}

fn criterion_5(sh: &mut Shared) -> Check {
    let qc = sh.qchar(LieType::b(4), "2,0;2,4");
    contains(&qc, &m(&[(4, 3, 1), (3, 10, -1), (3, 8, 1), (4, 15, -1)]), "B4 (2,0)(2,4)")?;
    let qc = sh.qchar(LieType::b(4), "4,1;4,3");
    contains(&qc, &m(&[(1, 8, 1), (3, 14, -1)]), "B4 (4,1)(4,3)")
}

fn criterion_6(sh: &mut Shared) -> Check {
    let qc = sh.qchar(LieType::b(5), "4,0;5,5;4,10");
    let want = m(&[
        (2, 12, -1),
        (5, 7, 1),
        (5, 1, 1),
        (5, 13, 1),
        (4, 14, -1),
        (2, 10, 1),
        (1, 22, -1),
        (5, 15, 1),
        (5, 17, 1),
        (4, 18, -1),
        (2, 14, 1),
    ]);
    ensure(want.len() == 11, || "example monomial should have 11 factors".into())?;
    contains(&qc, &want, "B5 minimal snake")?;
    ensure(qc.is_thin() && qc.is_special() && qc.is_anti_special(), || {
        format!("thin {} special {} anti-special {}", qc.is_thin(), qc.is_special(), qc.is_anti_special())
    })
}

fn criterion_7(sh: &mut Shared) -> Check {
    for (sn, qc) in &sh.computed {
        let r = verify_theorem_a(&sn.lie_type().cartan(), &sn.highest_monomial(), qc);
        ensure(r.all_pass(), || format!("{} {sn}:\n{r}", sn.lie_type()))?;
    }
    // Weyl module of Y_0 Y_2 in sl2: (Y_0 + Y_2^-1)(Y_2 + Y_4^-1).
    let a1 = LieType::a(1);
    let top = m(&[(1, 0, 1), (1, 2, 1)]);
    let weyl = QCharacter::from_monomials(
        top.clone(),
        [top.clone(), m(&[(1, 0, 1), (1, 4, -1)]), YMonomial::one(), m(&[(1, 2, -1), (1, 4, -1)])],
    );
    let r = verify_theorem_a(&a1.cartan(), &top, &weyl);
    ensure(!r.cond_i, || format!("Weyl set passed condition (i):\n{r}"))?;

    let a4 = LieType::a(4);
    let mut cut = sh.qchar(a4, "2,1");
    cut.terms.remove(&m(&[(1, 4, -1), (2, 3, 1), (4, 5, -1)]));
    let r = verify_theorem_a(&a4.cartan(), &cut.highest, &cut);
    ensure(!r.cond_iii && r.cond_iii_violations.iter().any(|v| v.node == 2), || {
        format!("deleted-monomial set should fail (iii) at node 2:\n{r}")
    })
}

fn criterion_8(_: &mut Shared) -> Check {
    // (a), (b): the two worked diagrams, by exact streaming comparison.
    for (t, s, boxes) in [
        (LieType::a(5), "3,0;3,2;3,6;1,10;2,13;4,23", 16),
        (LieType::b(5), "4,-2;3,4;2,14;3,20", 12),
    ] {
        let d = diagram_from_snake(&snake(t, s)).unwrap();
        ensure(d.len() == boxes, || format!("{t} diagram has {} boxes", d.len()))?;
        let cc = cross_check(t, &d).unwrap();
        ensure(cc.equal, || format!("{t} {s}: {cc:?}"))?;
        println!("    {t} {s}: {} tuples = {} tableaux", cc.tuples, cc.tableaux);
    }
    // Exact diagram shapes of the worked examples.
    let a5 = diagram_from_snake(&snake(LieType::a(5), "3,0;3,2;3,6;1,10;2,13;4,23")).unwrap();
    ensure(a5.shape_string() == "1:0:3;2:0:3;3:-1:3;4:-1:1;5:-2:2;6:-7:4", || a5.shape_string())?;
    let b5 = diagram_from_snake(&snake(LieType::b(5), "4,-2;3,4;2,14;3,20")).unwrap();
    ensure(b5.shape_string() == "1:0:4;2:0:3;3:-1:2;4:-2:3", || b5.shape_string())?;

    // (c) every type A single column, N <= 5, as full multisets.
    for n in 1..=5 {
        let t = LieType::a(n);
        for h in 1..=n {
            let d = SkewDiagram::new(vec![Some(Column { top: 0, height: h })]).unwrap();
            let paths = snake_qchar(&snake_from_diagram(t, &d).unwrap()).unwrap();
            ensure(tableaux_qchar(t, &d) == paths, || format!("{t} column of {h}"))?;
        }
    }

    // (d) 20 seeded random diagrams per type with at most 4 columns.
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut streamed = 0;
    for kind in [Kind::A, Kind::B] {
        for round in 0..20 {
            let n = 2 + round % 4;
            let t = LieType::new(kind, n).unwrap();
            // Redraw until the comparison stays within a few million tableaux.
            let d = loop {
                let d = random_diagram(t, 4, &mut rng);
                if count_tableaux(t, &d) <= 5_000_000 {
                    break d;
                }
            };
            let sn = snake_from_diagram(t, &d).unwrap();
            ensure(diagram_from_snake(&sn).unwrap() == d, || format!("{t} {}: not a bijection", d.shape_string()))?;
            if count_tableaux(t, &d) <= 200_000 {
                let tq = tableaux_qchar(t, &d);
                let pq = snake_qchar(&sn).unwrap();
                ensure(tq == pq, || format!("{t} {}: tableau and path sums differ", d.shape_string()))?;
            } else {
                streamed += 1;
                let cc = cross_check(t, &d).unwrap();
                ensure(cc.equal, || format!("{t} {}: {cc:?}", d.shape_string()))?;
            }
        }
    }
    println!("    40 random diagrams, {streamed} compared by streaming");
    Ok(())
}

fn criterion_9(_: &mut Shared) -> Check {
    let a5 = LieType::a(5);
    let d = diagram_from_snake(&snake(a5, "3,0;3,2;3,6;1,10;2,13;4,23")).unwrap();
    let plain = |cols: &[&[usize]]| -> Vec<Vec<Letter>> {
        cols.iter().map(|c| c.iter().map(|&i| Letter::Plain(i)).collect()).collect()
    };
    let fill = plain(&[&[1, 3, 6], &[2, 3, 6], &[1, 2, 3], &[6], &[3, 6], &[1, 3, 4, 5]]);
    let tab = SkewTableau::new(a5, d, fill).map_err(|e| e.to_string())?;
    let want = mono(
        "Y[1,2] Y[2,3]^-1 Y[3,2] Y[5,4]^-1 Y[1,6]^-1 Y[3,4] Y[5,6]^-1 Y[3,6] Y[5,16]^-1 \
         Y[2,17]^-1 Y[3,16] Y[5,18]^-1 Y[1,26] Y[2,27]^-1 Y[5,24]",
    );
    ensure(tab.monomial() == want, || format!("A5 tableau gives {}", tab.monomial()))?;

    let b5 = LieType::b(5);
    let d = diagram_from_snake(&snake(b5, "4,-2;3,4;2,14;3,20")).unwrap();
    let text = "\
          .  .  .  1
          .  .  4  0
          5  0 b1 b1
          0 b5  .  .
          0 b3  .  .
          0  .  .  .";
    let tab = SkewTableau::parse(b5, d, text).map_err(|e| e.to_string())?;
    let want = mono(
        "Y[5,-1] Y[4,14]^-1 Y[2,12] Y[3,14]^-1 Y[4,12] Y[5,19]^-1 Y[1,30]^-1 Y[4,22] \
         Y[3,24]^-1 Y[1,34]^-1 Y[5,27] Y[5,31]^-1 Y[1,24]",
    );
    ensure(tab.monomial() == want, || format!("B5 tableau gives {}", tab.monomial()))
}

fn fundamental_origins(t: LieType) -> Vec<(usize, i64)> {
    (1..=t.rank()).map(|i| (i, (0..4).find(|&k| t.in_x(i, k)).unwrap())).collect()
}

fn small_types() -> Vec<LieType> {
    (1..=4).map(LieType::a).chain((2..=4).map(LieType::b)).collect()
}

fn criterion_10(sh: &mut Shared) -> Check {
    for t in small_types() {
        let cd = t.cartan();
        for (i, k) in fundamental_origins(t) {
            let all = gen_paths(t, i, k).unwrap();
            let set: BTreeSet<Path> = all.iter().cloned().collect();
            // Moves multiply by A^{-1} / A and undo each other.
            for p in &all {
                for (j, l, dir) in move_sites(p) {
                    let Ok(q) = p.try_move(j, l, dir) else { continue };
                    let a = a_monomial(&cd, j, l).unwrap();
                    let want = match dir {
                        Direction::Lower => &p.monomial() / &a,
                        Direction::Raise => &p.monomial() * &a,
                    };
                    ensure(set.contains(&q) && q.monomial() == want, || format!("{t} {p} move ({j},{l})"))?;
                    let back = match dir {
                        Direction::Lower => Direction::Raise,
                        Direction::Raise => Direction::Lower,
                    };
                    ensure(q.try_move(j, l, back).as_ref() == Ok(p), || format!("{t} {p} move ({j},{l}) not undone"))?;
                }
            }
            // Every path is reached from the highest one.
            let hi = extremal_path(t, i, k, Extremal::Highest).unwrap();
            let mut seen = BTreeSet::from([hi.clone()]);
            let mut queue = VecDeque::from([hi]);
            while let Some(p) = queue.pop_front() {
                for (j, l, dir) in move_sites(&p) {
                    if let Ok(q) = p.try_move(j, l, dir) {
                        if seen.insert(q.clone()) {
                            queue.push_back(q);
                        }
                    }
                }
            }
            ensure(seen == set, || format!("{t} ({i},{k}): BFS reaches {} of {}", seen.len(), set.len()))?;
            // Lower corners determine the path.
            let lowers: BTreeSet<BTreeSet<LatticePoint>> = all.iter().map(|p| p.corners().lower).collect();
            ensure(lowers.len() == all.len(), || format!("{t} ({i},{k}): lower corners collide"))?;
        }
    }
    for (sn, qc) in &sh.computed {
        let tuples = count_tuples(sn).unwrap();
        ensure(tuples == qc.len() && qc.is_thin(), || format!("{sn}: {tuples} tuples, {} monomials", qc.len()))?;
        let rc = restricted_character(&sn.lie_type().cartan(), qc);
        ensure(rc.weyl_invariant, || format!("{sn}: restricted character not Weyl invariant"))?;
    }
    Ok(())
}

fn criterion_11(_: &mut Shared) -> Check {
    let a4 = LieType::a(4);
    let pts = |v: &[(usize, i64)]| v.iter().map(|&p| p.into()).collect::<Vec<LatticePoint>>();
    let r = validate_snake(a4, &pts(&[(2, 1), (3, 4)]));
    ensure(r.is_snake && r.is_minimal && r.is_minimal_affinization, || format!("(2,1),(3,4): {r:?}"))?;
    let r = validate_snake(a4, &pts(&[(2, 1), (3, 6)]));
    ensure(r.is_snake && !r.is_minimal, || format!("(2,1),(3,6): {r:?}"))?;
    let r = validate_snake(a4, &pts(&[(2, 1), (3, 4), (2, 7)]));
    ensure(r.is_snake && r.is_minimal && !r.is_minimal_affinization, || format!("(2,1),(3,4),(2,7): {r:?}"))
}

fn main() {
    let criteria: [(&str, Criterion); 11] = [
        ("A4 fundamental L(Y[2,1])", criterion_1),
        ("B4 vector representation L(Y[1,0])", criterion_2),
        ("B4 spin representation L(Y[4,1])", criterion_3),
        ("B4 overlap rule in the short column", criterion_4),
        ("B4 shared-corner examples", criterion_5),
        ("B5 minimal snake (4,0)(5,5)(4,10)", criterion_6),
        ("thin/special criteria verifier", criterion_7),
        ("tableau sums equal path sums", criterion_8),
        ("worked tableau monomials", criterion_9),
        ("path and tuple properties", criterion_10),
        ("snake classification", criterion_11),
    ];
    let mut shared = Shared { computed: Vec::new() };
    let mut failed = BTreeMap::new();
    for (n, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(|| check(&mut shared)))
            .unwrap_or_else(|e| Err(format!("panicked: {:?}", e.downcast_ref::<String>())));
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(()) => println!("criterion {:>2} PASS ({secs:.1}s): {name}", n + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL ({secs:.1}s): {name}: {why}", n + 1);
                failed.insert(n + 1, why);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {:?}", failed.keys().collect::<Vec<_>>());
        std::process::exit(1);
    }
}
