use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use snakechar::lattice::weight_of;
use snakechar::qchar::{path_sets, restricted_character, snake_qchar, verify_theorem_a, QCharJson};
use snakechar::snakes::SnakeReport;
use snakechar::tableaux::{
    cross_check, diagram_from_snake, for_each_tableau, snake_from_diagram, tableau_monomial, tableaux_qchar,
};
use snakechar::{Error, Kind, Letter, LieType, QCharacter, SkewDiagram, Snake, TheoremAReport, YMonomial};

#[derive(Parser)]
#[command(name = "snakechar", version, about = "q-characters of snake modules in types A and B")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the path sets of each snake point.
    Paths(Input),
    /// The q-character as a sum over non-overlapping path tuples.
    Qchar(Input),
    /// The q-character plus the thin/special criteria check.
    Verify(Input),
    /// The skew diagram and all of its tableaux.
    Tableaux {
        #[command(flatten)]
        input: Input,
        /// Print at most this many tableaux.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Compare the tableau sum with the path sum.
    Compare {
        #[command(flatten)]
        input: Input,
        /// Match tuples to tableaux column by column instead of building
        /// both characters. Exact, and needs no memory per term.
        #[arg(long)]
        streaming: bool,
    },
    /// The ordinary character: weight multiplicities and Weyl invariance.
    Restrict(Input),
}

#[derive(Args)]
struct Input {
    #[arg(long = "type", value_name = "A|B")]
    kind: Kind,
    #[arg(long)]
    rank: usize,
    #[command(flatten)]
    shape: Shape,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    output: Output,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Shape {
    /// Snake points as "i,k;i,k;...".
    #[arg(long, allow_hyphen_values = true)]
    snake: Option<String>,
    /// Skew diagram columns as "col:topRow:height;...".
    #[arg(long, allow_hyphen_values = true)]
    diagram: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

impl Input {
    fn lie_type(&self) -> Result<LieType, Error> {
        LieType::new(self.kind, self.rank)
    }

    fn snake(&self) -> Result<Snake, Error> {
        let t = self.lie_type()?;
        match (&self.shape.snake, &self.shape.diagram) {
            (Some(s), _) => Snake::parse(t, s),
            (None, Some(d)) => snake_from_diagram(t, &SkewDiagram::parse(d)?),
            (None, None) => unreachable!("clap requires one input"),
        }
    }

    fn diagram(&self) -> Result<SkewDiagram, Error> {
        match &self.shape.diagram {
            Some(d) => {
                let d = SkewDiagram::parse(d)?;
                snake_from_diagram(self.lie_type()?, &d)?;
                Ok(d)
            }
            None => diagram_from_snake(&self.snake()?),
        }
    }
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
struct QcharReport {
    #[serde(flatten)]
    qchar: QCharJson,
    dimension: u64,
    thin: bool,
    special: bool,
    anti_special: bool,
    classification: SnakeReport,
}

impl QcharReport {
    fn new(snake: &Snake, qc: &QCharacter) -> Self {
        QcharReport {
            qchar: QCharJson::new(snake, qc),
            dimension: qc.dimension(),
            thin: qc.is_thin(),
            special: qc.is_special(),
            anti_special: qc.is_anti_special(),
            classification: snake.report(),
        }
    }
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
struct VerifyReport {
    #[serde(flatten)]
    qchar: QcharReport,
    theorem_a: TheoremAReport,
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
struct PathJson {
    polyline: Vec<[i64; 3]>,
    monomial: YMonomial,
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
struct PathSetJson {
    point: [i64; 2],
    paths: Vec<PathJson>,
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
struct TableauJson {
    fill: Vec<Vec<Letter>>,
    monomial: YMonomial,
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
struct TableauxReport {
    diagram: String,
    snake: String,
    count: usize,
    tableaux: Vec<TableauJson>,
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
struct CompareReport {
    method: String,
    path_terms: usize,
    tableau_terms: usize,
    equal: bool,
    mismatch: Option<String>,
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
struct WeightJson {
    weight: Vec<i64>,
    mult: u64,
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
struct RestrictReport {
    weights: Vec<WeightJson>,
    weyl_invariant: bool,
}

/// What went wrong, and the exit status it maps to.
enum Failure {
    Domain(Error),
    Mismatch,
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn json<T: Serialize>(out: &mut impl Write, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

fn write_qchar_text(out: &mut impl Write, snake: &Snake, r: &QcharReport, qc: &QCharacter) -> io::Result<()> {
    writeln!(out, "type {} snake {}", snake.lie_type(), snake)?;
    let c = &r.classification;
    writeln!(
        out,
        "snake: {} minimal: {} minimal affinization: {}",
        c.is_snake, c.is_minimal, c.is_minimal_affinization
    )?;
    writeln!(out, "terms: {} dimension: {}", qc.len(), r.dimension)?;
    writeln!(out, "thin: {} special: {} anti-special: {}", r.thin, r.special, r.anti_special)?;
    for (m, &n) in &qc.terms {
        if n == 1 {
            writeln!(out, "{m}")?;
        } else {
            writeln!(out, "{n} {m}")?;
        }
    }
    Ok(())
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), Failure> {
    match cli.command {
        Command::Paths(input) => {
            let snake = input.snake()?;
            let sets = path_sets(&snake)?;
            let report: Vec<PathSetJson> = snake
                .points()
                .iter()
                .zip(&sets)
                .map(|(p, set)| PathSetJson {
                    point: [p.i as i64, p.k],
                    paths: set.iter().map(|q| PathJson { polyline: q.to_polyline(), monomial: q.monomial() }).collect(),
                })
                .collect();
            if input.output == Output::Json {
                json(out, &report)?;
            } else {
                for (s, set) in report.iter().zip(&sets) {
                    writeln!(out, "P[{},{}]: {} paths", s.point[0], s.point[1], s.paths.len())?;
                    for (j, q) in s.paths.iter().zip(set) {
                        writeln!(out, "  {}  {}", j.monomial, q)?;
                    }
                }
            }
        }
        Command::Qchar(input) => {
            let snake = input.snake()?;
            let qc = snake_qchar(&snake)?;
            let r = QcharReport::new(&snake, &qc);
            match input.output {
                Output::Json => json(out, &r)?,
                Output::Text => write_qchar_text(out, &snake, &r, &qc)?,
            }
        }
        Command::Verify(input) => {
            let snake = input.snake()?;
            let qc = snake_qchar(&snake)?;
            let report = verify_theorem_a(&snake.lie_type().cartan(), &snake.highest_monomial(), &qc);
            let pass = report.all_pass();
            let r = VerifyReport { qchar: QcharReport::new(&snake, &qc), theorem_a: report };
            match input.output {
                Output::Json => json(out, &r)?,
                Output::Text => {
                    writeln!(out, "type {} snake {}", snake.lie_type(), snake)?;
                    writeln!(out, "terms: {}", qc.len())?;
                    write!(out, "{}", r.theorem_a)?;
                    writeln!(out, "{}", if pass { "VERIFIED" } else { "NOT VERIFIED" })?;
                }
            }
            if !pass {
                return Err(Failure::Mismatch);
            }
        }
        Command::Tableaux { input, limit } => {
            let t = input.lie_type()?;
            let d = input.diagram()?;
            let snake = snake_from_diagram(t, &d)?;
            let limit = limit.unwrap_or(usize::MAX);
            if input.output == Output::Json {
                let mut tableaux = Vec::new();
                let mut count = 0;
                for_each_tableau(t, &d, |fill| {
                    count += 1;
                    if tableaux.len() < limit {
                        tableaux.push(TableauJson { fill: fill.to_vec(), monomial: tableau_monomial(t, &d, fill) });
                    }
                });
                json(out, &TableauxReport { diagram: d.shape_string(), snake: snake.to_string(), count, tableaux })?;
            } else {
                writeln!(out, "type {t} snake {snake} diagram {}", d.shape_string())?;
                write!(out, "{d}")?;
                let mut count = 0;
                let mut res = Ok(());
                for_each_tableau(t, &d, |fill| {
                    count += 1;
                    if count <= limit && res.is_ok() {
                        let tab = snakechar::SkewTableau::new(t, d.clone(), fill.to_vec()).expect("enumerated");
                        res = write!(out, "\n{}\n{tab}", tab.monomial());
                    }
                });
                res?;
                writeln!(out, "\ntableaux: {count}")?;
            }
        }
        Command::Compare { input, streaming } => {
            let t = input.lie_type()?;
            let d = input.diagram()?;
            let r = if streaming {
                let cc = cross_check(t, &d)?;
                CompareReport {
                    method: "streaming".into(),
                    path_terms: cc.tuples,
                    tableau_terms: cc.tableaux,
                    equal: cc.equal,
                    mismatch: cc.mismatch,
                }
            } else {
                let paths = snake_qchar(&snake_from_diagram(t, &d)?)?;
                let tabs = tableaux_qchar(t, &d);
                let equal = paths.terms == tabs.terms;
                let mismatch = (!equal).then(|| {
                    let only_p = paths.terms.keys().find(|m| !tabs.terms.contains_key(*m));
                    let only_t = tabs.terms.keys().find(|m| !paths.terms.contains_key(*m));
                    match (only_p, only_t) {
                        (Some(m), _) => format!("{m} only in the path sum"),
                        (None, Some(m)) => format!("{m} only in the tableau sum"),
                        (None, None) => "multiplicities differ".into(),
                    }
                });
                CompareReport {
                    method: "full".into(),
                    path_terms: paths.dimension() as usize,
                    tableau_terms: tabs.dimension() as usize,
                    equal,
                    mismatch,
                }
            };
            match input.output {
                Output::Json => json(out, &r)?,
                Output::Text if r.equal => writeln!(out, "EQUAL ({} terms)", r.path_terms)?,
                Output::Text => writeln!(
                    out,
                    "MISMATCH (paths {}, tableaux {}): {}",
                    r.path_terms,
                    r.tableau_terms,
                    r.mismatch.as_deref().unwrap_or("")
                )?,
            }
            if !r.equal {
                return Err(Failure::Mismatch);
            }
        }
        Command::Restrict(input) => {
            let snake = input.snake()?;
            let cd = snake.lie_type().cartan();
            let qc = snake_qchar(&snake)?;
            let rc = restricted_character(&cd, &qc);
            let r = RestrictReport {
                weights: rc.weights.iter().map(|(w, &mult)| WeightJson { weight: w.0.clone(), mult }).collect(),
                weyl_invariant: rc.weyl_invariant,
            };
            match input.output {
                Output::Json => json(out, &r)?,
                Output::Text => {
                    writeln!(out, "type {} snake {}", snake.lie_type(), snake)?;
                    writeln!(out, "highest weight: {}", weight_of(&cd, &snake.highest_monomial()))?;
                    for w in &r.weights {
                        writeln!(out, "{} {:?}", w.mult, w.weight)?;
                    }
                    writeln!(out, "weyl invariant: {}", r.weyl_invariant)?;
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("SNAKE_QCHAR_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("warning: could not size the thread pool: {e}");
        }
    }
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let res = run(cli, &mut out).and_then(|()| out.flush().map_err(Failure::Io));
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(e)) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Mismatch) => {
            let _ = out.flush();
            ExitCode::from(3)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
