use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use ssv_core::field::{LimitDirection, Scalar};
use ssv_core::formulas::{
    compute_e, compute_e_limit, compute_p, compute_p_limit, compute_tu_e, walk_coefficient, Normalization,
};
use ssv_core::laurent::LaurentPolynomial;
use ssv_core::rootsys::{AffineRoot, MetaplecticContext};
use ssv_core::serialize::{latex_line, to_text, PolyDocument};
use ssv_core::verify::{self, Suite, Sweep};
use ssv_core::walks::enumerate_walks;
use ssv_core::words::reduce_to_fundamental;
use ssv_core::Error;

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

/// Metaplectic nonsymmetric Macdonald (SSV) polynomials of type GL_r.
#[derive(Parser)]
#[command(name = "ssv", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// E_mu, monic unless --normalization raw.
    E(ComputeArgs),
    /// The symmetrized polynomial P_mu for dominant mu.
    P(Common),
    /// T_u E_mu with permuted basement u (walk sum, unnormalized).
    Tu {
        #[command(flatten)]
        common: Common,
        /// Permutation in one-line notation, 1-based, e.g. 2,1,3.
        #[arg(long)]
        u: String,
    },
    /// q -> 0 or q -> infinity limit of E_mu or P_mu.
    Limit {
        #[command(flatten)]
        args: ComputeArgs,
        #[arg(long, value_enum)]
        direction: Direction,
        #[arg(long, value_enum, default_value_t = Of::E)]
        of: Of,
    },
    /// Reduced word, roots beta_j and every alcove walk with its coefficient.
    Walks(Common),
    /// Run verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Restrict the sweep to this rank.
        #[arg(long)]
        r: Option<usize>,
        /// Restrict the sweep to this metaplectic degree.
        #[arg(long)]
        n: Option<i64>,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 3)]
    r: usize,
    /// Metaplectic degree.
    #[arg(long, default_value_t = 1)]
    n: i64,
    /// Comma-separated weight, e.g. 0,1,0.
    #[arg(long, allow_hyphen_values = true)]
    mu: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Keep G_{n/2} fully formal instead of reducing G_{n/2}^2 = 1.
    #[arg(long)]
    no_ghalf_reduction: bool,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value_t = Norm::Monic)]
    normalization: Norm,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Norm {
    Monic,
    Raw,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    Q0,
    Qinf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Of {
    E,
    P,
}

enum Failure {
    Usage(String),
    Verify(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::IdentityViolated(_) | Error::Internal(_) | Error::DivergentLimit(_) => {
                Failure::Internal(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn parse_vector(s: &str, what: &str) -> CliResult<Vec<i64>> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Usage(format!("malformed {what} {s:?}: expected comma-separated integers")))
}

fn parse_perm(s: &str, r: usize) -> CliResult<Vec<usize>> {
    let v = parse_vector(s, "permutation")?;
    if v.len() != r {
        return Err(Failure::Usage(format!("permutation {s:?} has length {}, expected {r}", v.len())));
    }
    let mut seen = vec![false; r];
    let mut out = Vec::with_capacity(r);
    for x in v {
        if x < 1 || x as usize > r || seen[x as usize - 1] {
            return Err(Failure::Usage(format!("{s:?} is not a permutation of 1..{r}")));
        }
        seen[x as usize - 1] = true;
        out.push(x as usize - 1);
    }
    Ok(out)
}

impl Common {
    fn context(&self) -> CliResult<(MetaplecticContext, Vec<i64>)> {
        let ctx = MetaplecticContext::new(self.r, self.n)?.with_reduce_half(!self.no_ghalf_reduction);
        let mu = parse_vector(&self.mu, "weight")?;
        ctx.check_rank(&mu)?;
        Ok((ctx, mu))
    }
}

fn norm_of(n: Norm) -> (Normalization, &'static str) {
    match n {
        Norm::Monic => (Normalization::Monic, "monic"),
        Norm::Raw => (Normalization::Raw, "raw"),
    }
}

struct Output<'a> {
    object: &'a str,
    latex_object: String,
    normalization: Option<&'a str>,
    u: Option<Vec<usize>>,
    direction: Option<&'a str>,
}

fn emit(fmt: Format, out: Output, mu: &[i64], ctx: &MetaplecticContext, p: &LaurentPolynomial<Scalar>) -> CliResult<()> {
    let half = ctx.half_symbol();
    let text = match fmt {
        Format::Text => to_text(p, half)?,
        Format::Latex => latex_line(&out.latex_object, mu, ctx.n(), p, half)?,
        Format::Json => {
            let mut doc = PolyDocument::new(out.object, mu, ctx.n(), out.normalization, p, half)?;
            doc.u = out.u;
            doc.direction = out.direction.map(str::to_string);
            doc.to_json()
        }
    };
    println!("{text}");
    Ok(())
}

fn one_based(perm: &[usize]) -> Vec<usize> {
    perm.iter().map(|v| v + 1).collect()
}

fn show_root(b: &AffineRoot) -> String {
    format!("{:?} + {} delta", b.finite, b.level)
}

fn walks(c: &Common) -> CliResult<()> {
    let (ctx, mu) = c.context()?;
    let half = ctx.half_symbol();
    let dec = reduce_to_fundamental(&mu, &ctx)?;
    let start = ssv_core::rootsys::AffineWeylElement::identity(ctx.r());
    let all = enumerate_walks(&start, &dec.word);
    let mut rows = Vec::with_capacity(all.len());
    for w in &all {
        let term = walk_coefficient(w, &dec, &ctx)?;
        let coef = term.coefficient.normalize(half)?.render_text();
        rows.push((w, term.exponent, coef));
    }
    match c.format {
        Format::Json => {
            let doc = json!({
                "r": ctx.r(),
                "n": ctx.n(),
                "mu": mu,
                "lambda": dec.lambda,
                "word": dec.word,
                "betas": dec.betas.iter().map(|b| json!({"finite": b.finite, "level": b.level})).collect::<Vec<_>>(),
                "walks": rows.iter().map(|(w, e, coef)| json!({
                    "choices": w.choice_string(),
                    "end": {"translation": w.end.translation, "perm": one_based(&w.end.perm)},
                    "wt": w.wt,
                    "phi": one_based(&w.phi),
                    "positive_folds": w.pos_folds.iter().map(|j| j + 1).collect::<Vec<_>>(),
                    "negative_folds": w.neg_folds.iter().map(|j| j + 1).collect::<Vec<_>>(),
                    "exponent": e,
                    "coefficient": coef,
                })).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("json value serializes"));
        }
        Format::Text => {
            println!("mu = {:?}, n = {}, lambda = {:?}", mu, ctx.n(), dec.lambda);
            println!("word = {:?}", dec.word);
            for (j, b) in dec.betas.iter().enumerate() {
                println!("beta_{} = {}", j + 1, show_root(b));
            }
            println!("choices\twt\tphi\texponent\tcoefficient");
            for (w, e, coef) in &rows {
                let choices = if w.word.is_empty() { "(empty)".to_string() } else { w.choice_string() };
                println!("{choices}\t{:?}\t{:?}\t{:?}\t{coef}", w.wt, one_based(&w.phi), e);
            }
        }
        Format::Latex => return Err(Failure::Usage("walks supports text and json output".into())),
    }
    Ok(())
}

fn verify_cmd(suite: &str, r: Option<usize>, n: Option<i64>) -> CliResult<()> {
    let suite = Suite::parse(suite).ok_or_else(|| {
        Failure::Usage(format!("unknown suite {suite:?}; expected golden, relations, oracle, eigen, order, limits or all"))
    })?;
    let sweep = match (r, n) {
        (None, None) => None,
        _ => {
            let base = Sweep::standard();
            Some(Sweep {
                ranks: r.map(|r| vec![r]).unwrap_or(base.ranks),
                degrees: n.map(|n| vec![n]).unwrap_or(base.degrees),
                ..base
            })
        }
    };
    if let Some(s) = &sweep {
        for &r in &s.ranks {
            for &n in &s.degrees {
                MetaplecticContext::new(r, n)?;
            }
        }
    }
    let report = verify::run(suite, sweep.as_ref())?;
    for c in &report.checks {
        println!("{c}");
    }
    let failed = report.checks.iter().filter(|c| !c.passed()).count();
    println!("{} checks, {} failed", report.checks.len(), failed);
    match report.first_failure() {
        None => Ok(()),
        Some(first) if report.has_errors() => Err(Failure::Internal(format!("first failure: {first}"))),
        Some(first) => Err(Failure::Verify(format!("first failure: {first}"))),
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::E(a) => {
            let (ctx, mu) = a.common.context()?;
            let (norm, name) = norm_of(a.normalization);
            let p = compute_e(&mu, &ctx, norm)?;
            let out = Output { object: "E", latex_object: "E".into(), normalization: Some(name), u: None, direction: None };
            emit(a.common.format, out, &mu, &ctx, &p)
        }
        Command::P(c) => {
            let (ctx, mu) = c.context()?;
            let p = compute_p(&mu, &ctx)?;
            let out = Output { object: "P", latex_object: "P".into(), normalization: Some("raw"), u: None, direction: None };
            emit(c.format, out, &mu, &ctx, &p)
        }
        Command::Tu { common, u } => {
            let (ctx, mu) = common.context()?;
            let perm = parse_perm(&u, ctx.r())?;
            let p = compute_tu_e(&perm, &mu, &ctx)?;
            let label: Vec<String> = one_based(&perm).iter().map(|v| v.to_string()).collect();
            let out = Output {
                object: "TuE",
                latex_object: format!("T_{{[{}]}} E", label.join(",")),
                normalization: Some("raw"),
                u: Some(one_based(&perm)),
                direction: None,
            };
            emit(common.format, out, &mu, &ctx, &p)
        }
        Command::Limit { args, direction, of } => {
            let (ctx, mu) = args.common.context()?;
            let (dir, dname, dlatex) = match direction {
                Direction::Q0 => (LimitDirection::Zero, "q0", "0"),
                Direction::Qinf => (LimitDirection::Infinity, "qinf", "\\infty"),
            };
            let (p, object, norm) = match of {
                Of::E => {
                    let (norm, name) = norm_of(args.normalization);
                    (compute_e_limit(&mu, &ctx, dir, norm)?, "E", name)
                }
                Of::P => (compute_p_limit(&mu, &ctx, dir)?, "P", "raw"),
            };
            let out = Output {
                object,
                latex_object: format!("\\lim_{{q \\to {dlatex}}} {object}"),
                normalization: Some(norm),
                u: None,
                direction: Some(dname),
            };
            emit(args.common.format, out, &mu, &ctx, &p)
        }
        Command::Walks(c) => walks(&c),
        Command::Verify { suite, r, n } => verify_cmd(&suite, r, n),
    }
}

fn configure_threads() -> CliResult<()> {
    let Ok(v) = std::env::var("SSV_THREADS") else {
        return Ok(());
    };
    let threads: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::Usage(format!("SSV_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Internal(format!("thread pool: {e}")))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = configure_threads().and_then(|()| run(cli));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Verify(m)) => {
            eprintln!("{m}");
            ExitCode::from(EXIT_VERIFY)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}
