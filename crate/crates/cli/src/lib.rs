//! The `kalg` command line. [`run`] is the whole program minus process exit, so tests
//! can drive it with in-memory streams.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde_json::{json, Value};

use kalg::cohomology::{mu_as_element, parse_cocycle, reduce_cocycle};
use kalg::exact::{parse_rational_str, Gq, Rational};
use kalg::ideals::{classify_ideal_window, ideal_closure_window, IdealDescriptor};
use kalg::jets::{chi_lambda, jet_compose, jet_exp, jet_of_field, Jet2Algebra, Jet2Group};
use kalg::lie::{
    bracket, m_basis, m_basis_k, phi_k, star, to_fourier, AlgebraKind, LieElement, Window,
};
use kalg::morphisms::{
    classify_morphism, l0_extension_solve, parse_generator_map, verify_star_morphism, GeneratorMap,
    L0Extension, MorphismCheck, MorphismClass,
};
use kalg::verma::{
    gram_k_form, kac_determinant, reducibility_test, singular_vector_search, Reducibility, Weight,
};
use kalg::{format_element, parse_element};

#[derive(Parser, Debug)]
#[command(
    name = "kalg",
    version,
    about = "Exact computations in the Witt, Virasoro and K algebras"
)]
struct Cli {
    /// Truncation bound N: generators with 1 ≤ |n| ≤ N. Defaults to 8, or for map
    /// files to the largest window the file defines.
    #[arg(long, global = true)]
    window: Option<u32>,
    /// Level or maximal PBW degree for module computations.
    #[arg(long, global = true, default_value_t = 4)]
    level: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for parallel matrix fills.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bracket of two elements.
    Bracket {
        #[arg(value_parser = element, allow_hyphen_values = true)]
        a: LieElement,
        #[arg(value_parser = element, allow_hyphen_values = true)]
        b: LieElement,
    },
    /// The anti-linear involution K_n ↦ K_{-n}.
    Star {
        #[arg(value_parser = element, allow_hyphen_values = true)]
        x: LieElement,
    },
    /// The jet functional φ_k (k-th derivative at θ = 0).
    #[command(allow_negative_numbers = true)]
    Phi {
        #[arg(long)]
        k: u32,
        #[arg(value_parser = element, allow_hyphen_values = true)]
        x: LieElement,
    },
    /// The basis element M^k_n of 𝒦_k.
    #[command(allow_negative_numbers = true)]
    Mbasis {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: i64,
        /// Print in the Witt basis instead of the K basis.
        #[arg(long)]
        witt: bool,
    },
    /// Window shadow of the ideal generated by the given elements.
    IdealClosure {
        #[arg(required = true, value_parser = element, allow_hyphen_values = true)]
        generators: Vec<LieElement>,
    },
    /// Closure followed by identification against the known ideals.
    ClassifyIdeal {
        #[arg(required = true, value_parser = element, allow_hyphen_values = true)]
        generators: Vec<LieElement>,
    },
    /// Split a 2-cocycle file into coboundary plus a multiple of the Virasoro cocycle.
    CocycleReduce { file: PathBuf },
    /// Check that a generator map is a star-homomorphism on the window.
    MorphismCheck { file: PathBuf },
    /// Identify a generator map within the known families.
    MorphismClassify { file: PathBuf },
    /// Extend a generator map to L_0, or certify that no extension exists.
    L0Extend { file: PathBuf },
    /// Contravariant form on monomials of degree ≤ --level.
    #[command(allow_negative_numbers = true)]
    Gram {
        #[arg(long, allow_hyphen_values = true, value_parser = rational)]
        h: Rational,
        #[arg(long, allow_hyphen_values = true, value_parser = rational)]
        hp: Rational,
        #[arg(long, allow_hyphen_values = true, value_parser = scalar)]
        c: Gq,
        #[arg(long, allow_hyphen_values = true, value_parser = scalar, default_value = "0")]
        lambda: Gq,
    },
    /// Shapovalov determinant of the Vir Verma module at --level.
    #[command(allow_negative_numbers = true)]
    Kac {
        /// Lowest weight H of L_0.
        #[arg(long = "H", allow_hyphen_values = true, value_parser = scalar)]
        h: Gq,
        #[arg(long, allow_hyphen_values = true, value_parser = scalar)]
        c: Gq,
    },
    /// Reducibility of the K-module with weight h + ih', central charge c.
    #[command(allow_negative_numbers = true)]
    Reducible {
        #[arg(long, allow_hyphen_values = true, value_parser = rational)]
        h: Rational,
        #[arg(long, allow_hyphen_values = true, value_parser = rational)]
        hp: Rational,
        #[arg(long, allow_hyphen_values = true, value_parser = scalar)]
        c: Gq,
        #[arg(long, allow_hyphen_values = true, value_parser = scalar, default_value = "0")]
        lambda: Gq,
        /// Defaults to --level.
        #[arg(long)]
        max_level: Option<u64>,
    },
    /// A singular vector of the Vir Verma module at --level, if any.
    #[command(allow_negative_numbers = true)]
    Singular {
        #[arg(long = "H", allow_hyphen_values = true, value_parser = scalar)]
        h: Gq,
        #[arg(long, allow_hyphen_values = true, value_parser = scalar)]
        c: Gq,
    },
    /// The 2-jet group at 0 and its Lie algebra.
    Jet {
        #[command(subcommand)]
        command: JetCmd,
    },
}

#[derive(Subcommand, Debug)]
enum JetCmd {
    /// Group law (X1, X2)·(Y1, Y2), arguments written "x1,x2".
    #[command(allow_negative_numbers = true)]
    Compose {
        #[arg(value_parser = group_elem, allow_hyphen_values = true)]
        a: Jet2Group,
        #[arg(value_parser = group_elem, allow_hyphen_values = true)]
        b: Jet2Group,
    },
    /// Time-s flow of the algebra element (x1, x2).
    #[command(allow_negative_numbers = true)]
    Exp {
        #[arg(long, allow_hyphen_values = true, value_parser = rational)]
        x1: Rational,
        #[arg(long, allow_hyphen_values = true, value_parser = rational)]
        x2: Rational,
        #[arg(long, allow_hyphen_values = true, value_parser = rational)]
        s: Rational,
    },
    /// The character exp(iλ log x1).
    #[command(allow_negative_numbers = true)]
    Chi {
        #[arg(long, allow_hyphen_values = true, value_parser = rational)]
        lambda: Rational,
        #[arg(long, allow_hyphen_values = true, value_parser = rational)]
        x1: Rational,
    },
    /// (v'(0), v''(0)) of a real field vanishing at 0.
    OfField {
        #[arg(value_parser = element, allow_hyphen_values = true)]
        x: LieElement,
    },
}

fn element(s: &str) -> Result<LieElement, String> {
    parse_element(s).map_err(|e| e.to_string())
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational_str(s).map_err(|e| e.to_string())
}

fn scalar(s: &str) -> Result<Gq, String> {
    s.parse::<Gq>().map_err(|e| e.to_string())
}

fn group_elem(s: &str) -> Result<Jet2Group, String> {
    let (a, b) = s.split_once(',').ok_or("expected x1,x2")?;
    Jet2Group::new(rational(a.trim())?, rational(b.trim())?).map_err(|e| e.to_string())
}

/// One command result in both renderings.
struct Output {
    text: String,
    json: Value,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output {
            text: text.into(),
            json,
        }
    }
}

enum Failure {
    Domain(String),
}

impl From<kalg::Error> for Failure {
    fn from(e: kalg::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome = Result<Output, Failure>;

fn s(x: &impl ToString) -> Value {
    Value::String(x.to_string())
}

const DEFAULT_WINDOW: u32 = 8;

fn window(n: Option<u32>) -> Result<Window, Failure> {
    Ok(Window::new(n.unwrap_or(DEFAULT_WINDOW))?)
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

fn element_out(x: &LieElement) -> Output {
    let t = format_element(x);
    Output::new(t.clone(), json!({ "element": t }))
}

fn load_map(cli: &Cli, path: &Path) -> Result<GeneratorMap, Failure> {
    let w = cli.window.map(Window::new).transpose()?;
    Ok(parse_generator_map(&read(path)?, w)?)
}

fn describe_ideal(d: IdealDescriptor) -> String {
    match d {
        IdealDescriptor::Zero => "zero".into(),
        IdealDescriptor::KChain(k) => format!("K_{k}"),
        IdealDescriptor::Phi1CapPhi3 => "ker phi_1 & ker phi_3".into(),
        IdealDescriptor::Unclassified => "unclassified".into(),
    }
}

fn describe_class(c: &MorphismClass) -> (String, Value) {
    match c {
        MorphismClass::LambdaAuto(l) => (
            format!("lambda automorphism (lambda={l})"),
            json!({"class": "lambda", "lambda": s(l)}),
        ),
        MorphismClass::LambdaTau(l) => (
            format!("lambda composed with tau (lambda={l})"),
            json!({"class": "lambda-tau", "lambda": s(l)}),
        ),
        MorphismClass::SigmaHalfLine { alpha, k } | MorphismClass::SigmaGeneric { alpha, k } => {
            let half = matches!(c, MorphismClass::SigmaHalfLine { .. });
            let kt = format_element(k);
            let tag = if half {
                "sigma-half-line"
            } else {
                "sigma-generic"
            };
            let line = if half { ", Re alpha = 1/2" } else { "" };
            (
                format!("sigma (alpha={alpha}, K={kt}){line}"),
                json!({"class": tag, "alpha": s(alpha), "K": kt}),
            )
        }
        MorphismClass::PositiveType(n) => (
            format!("positive type (N={n})"),
            json!({"class": "positive", "N": n}),
        ),
        MorphismClass::NegativeType(n) => (
            format!("negative type (N={n})"),
            json!({"class": "negative", "N": n}),
        ),
        MorphismClass::CentralType(nu) => (
            format!("central (nu={nu})"),
            json!({"class": "central", "nu": s(nu)}),
        ),
        MorphismClass::Invalid => ("invalid".into(), json!({"class": "invalid"})),
        MorphismClass::Unknown => ("unknown".into(), json!({"class": "unknown"})),
    }
}

fn dispatch(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Bracket { a, b } => Ok(element_out(&bracket(a, b)?)),
        Command::Star { x } => Ok(element_out(&star(x))),
        Command::Phi { k, x } => {
            let v = phi_k(*k, x)?;
            Ok(Output::new(v.to_string(), json!({ "value": s(&v) })))
        }
        Command::Mbasis { k, n, witt } => Ok(element_out(&if *witt {
            m_basis(*k, *n)
        } else {
            m_basis_k(*k, *n)
        })),
        Command::IdealClosure { generators } => {
            let span = ideal_closure_window(generators, window(cli.window)?)?;
            let basis: Vec<String> = span.basis_elements().iter().map(format_element).collect();
            let mut text = format!("rank {}", span.rank());
            for b in &basis {
                text.push('\n');
                text.push_str(b);
            }
            Ok(Output::new(
                text,
                json!({ "rank": span.rank(), "basis": basis }),
            ))
        }
        Command::ClassifyIdeal { generators } => {
            let span = ideal_closure_window(generators, window(cli.window)?)?;
            let d = describe_ideal(classify_ideal_window(&span));
            Ok(Output::new(
                d.clone(),
                json!({ "ideal": d, "rank": span.rank() }),
            ))
        }
        Command::CocycleReduce { file } => {
            let w = parse_cocycle(&read(file)?, window(cli.window)?)?;
            let r = reduce_cocycle(&w)?;
            let mu = format_element(&mu_as_element(&r.mu));
            Ok(Output::new(
                format!("t = {}, coboundary part: {mu}", r.t),
                json!({ "t": s(&r.t), "coboundary_part": mu, "interior": r.interior }),
            ))
        }
        Command::MorphismCheck { file } => {
            let m = load_map(cli, file)?;
            let (text, j) = match verify_star_morphism(&m, m.window())? {
                MorphismCheck::Valid => ("valid".to_string(), json!({ "valid": true })),
                MorphismCheck::BracketViolation { a, b } => (
                    format!("bracket violated on (K[{a}], K[{b}])"),
                    json!({ "valid": false, "bracket_violation": [a, b] }),
                ),
                MorphismCheck::StarViolation { n } => (
                    format!("star violated on K[{n}]"),
                    json!({ "valid": false, "star_violation": n }),
                ),
            };
            Ok(Output::new(text, j))
        }
        Command::MorphismClassify { file } => {
            let (text, j) = describe_class(&classify_morphism(&load_map(cli, file)?));
            Ok(Output::new(text, j))
        }
        Command::L0Extend { file } => {
            let m = load_map(cli, file)?;
            match l0_extension_solve(&m, m.window())? {
                L0Extension::Extension {
                    a0,
                    coeffs,
                    b,
                    unique,
                } => {
                    let img = l0_image(&a0, &coeffs, &b)?;
                    let t = format_element(&img);
                    let tag = if unique { "" } else { " (not unique)" };
                    Ok(Output::new(
                        format!("L[0] -> {t}{tag}"),
                        json!({ "extends": true, "image": t, "unique": unique }),
                    ))
                }
                L0Extension::Infeasible { witness, .. } => {
                    let w: Vec<String> = witness.iter().map(|x| x.to_string()).collect();
                    // text lists the nonzero equation weights only
                    let sparse: Vec<String> = witness
                        .iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(i, x)| format!("e{i}: {x}"))
                        .collect();
                    Ok(Output::new(
                        format!("no extension; certificate {{{}}}", sparse.join(", ")),
                        json!({ "extends": false, "certificate": w }),
                    ))
                }
            }
        }
        Command::Gram { h, hp, c, lambda } => {
            let wt = Weight::new(h.clone(), hp.clone(), c.clone(), lambda.clone());
            let (g, basis) = gram_k_form(&wt, cli.level)?;
            let labels: Vec<String> = basis.iter().map(|m| m.format_with('K')).collect();
            let rows: Vec<Vec<String>> = (0..g.rows())
                .map(|i| g.row(i).iter().map(|x| x.to_string()).collect())
                .collect();
            let mut text = format!("basis: {}", labels.join(", "));
            for r in &rows {
                text.push('\n');
                text.push_str(&r.join(" "));
            }
            Ok(Output::new(
                text,
                json!({ "basis": labels, "matrix": rows }),
            ))
        }
        Command::Kac { h, c } => {
            let d = kac_determinant(h, c, cli.level)?;
            Ok(Output::new(
                format!("det = {d}"),
                json!({ "level": cli.level, "det": s(&d) }),
            ))
        }
        Command::Reducible {
            h,
            hp,
            c,
            lambda,
            max_level,
        } => {
            let wt = Weight::new(h.clone(), hp.clone(), c.clone(), lambda.clone());
            let max = max_level.unwrap_or(cli.level);
            Ok(match reducibility_test(&wt, max) {
                Reducibility::Reducible(p) => Output::new(
                    format!("reducible (alpha={}, beta={})", p.alpha, p.beta),
                    json!({ "reducible": true, "alpha": p.alpha, "beta": p.beta }),
                ),
                Reducibility::IrreducibleUpTo(n) => Output::new(
                    format!("irreducible up to level {n}"),
                    json!({ "reducible": false, "max_level": n }),
                ),
            })
        }
        Command::Singular { h, c } => Ok(match singular_vector_search(h, c, cli.level)? {
            Some(v) => {
                let t = v.format_with('L');
                Output::new(t.clone(), json!({ "singular": t }))
            }
            None => Output::new(
                format!("none at level {}", cli.level),
                json!({ "singular": Value::Null }),
            ),
        }),
        Command::Jet { command } => jet(command),
    }
}

/// `a0 L_0 + Σ a_n K_n + b C` written in the Vir basis, with `K_n = L_n - L_0`.
fn l0_image(a0: &Gq, coeffs: &BTreeMap<i64, Gq>, b: &Gq) -> Result<LieElement, Failure> {
    let l0 = a0 - &coeffs.values().cloned().sum::<Gq>();
    let terms = coeffs.iter().map(|(&n, c)| (n, c.clone())).chain([(0, l0)]);
    Ok(LieElement::from_terms(AlgebraKind::Vir, terms, b.clone())?)
}

fn jet(cmd: &JetCmd) -> Outcome {
    match cmd {
        JetCmd::Compose { a, b } => {
            let g = jet_compose(a, b);
            Ok(Output::new(
                g.to_string(),
                json!({ "x1": s(g.x1()), "x2": s(g.x2()) }),
            ))
        }
        JetCmd::Exp { x1, x2, s: t } => {
            let g = jet_exp(&Jet2Algebra::new(x1.clone(), x2.clone()), t);
            Ok(Output::new(
                format!("({}, {})", g.x1, g.x2),
                json!({ "x1": g.x1, "x2": g.x2 }),
            ))
        }
        JetCmd::Chi { lambda, x1 } => {
            let g = Jet2Group::new(x1.clone(), Rational::from_integer(0.into()))?;
            let z = chi_lambda(lambda, &g);
            Ok(Output::new(
                format!("({}, {})", z.re, z.im),
                json!({ "re": z.re, "im": z.im }),
            ))
        }
        JetCmd::OfField { x } => {
            let j = jet_of_field(&to_fourier(x)?)?;
            Ok(Output::new(
                j.to_string(),
                json!({ "x1": s(&j.x1), "x2": s(&j.x2) }),
            ))
        }
    }
}

/// Runs the program on `args` (including the program name) and returns the exit status:
/// 0 on success, 1 on a domain error, 2 on a usage error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            // --help and --version are successful runs
            if code == 0 {
                let _ = write!(out, "{text}");
                return 0;
            }
            let _ = write!(err, "{text}");
            return 2;
        }
    };
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(Failure::Domain(format!("cannot start thread pool: {e}"))),
        },
        None => dispatch(&cli),
    };
    match result {
        Ok(o) => {
            let body = match cli.format {
                Format::Text => o.text,
                Format::Json => o.json.to_string(),
            };
            let _ = writeln!(out, "{body}");
            0
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}
