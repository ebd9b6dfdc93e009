//! Command-line front end: expression ordering, derivatives, symmetry
//! actions, verification suites and the numeric dispersion relation.
//!
//! Exit codes: 0 on success (and all-pass for suites), 1 when a verification
//! suite reports failures or a numeric search fails, 2 for usage, syntax or
//! domain errors. `--json` switches every command to a stable JSON schema
//! tagged `"schema": 1`.

use crate::calculus::{check_calculus, deformed_box, exterior_d, FormLabel};
use crate::ordered::OrderedElement;
use crate::parse::parse_element;
use crate::report::Report;
use crate::symmetry::{
    self, act_generator, dispersion_residual, solve_k0, BoostSign, Generator, Momentum,
};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "kmink",
    version,
    about = "Exact symbolic calculus for the kappa-Minkowski space algebra"
)]
pub struct Cli {
    /// Emit machine-readable JSON (schema 1) instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normally order an expression and print its canonical form.
    Order {
        /// Expression over x0..x3, i, k; `*` is the noncommutative product.
        expr: String,
    },
    /// Exterior derivative: print the coefficients of t0..t3 and tau.
    D {
        expr: String,
    },
    /// Apply a symmetry generator or the invariant box operator.
    Apply {
        #[arg(value_enum)]
        operator: OperatorName,
        expr: String,
    },
    /// Run a verification suite over a monomial grid; exit 0 iff all pass.
    Check {
        #[arg(value_enum)]
        suite: SuiteName,
        /// Largest total monomial degree swept by the suite.
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(2..=10))]
        max_degree: u32,
        /// Overall sign convention on the boost action. The shipped default
        /// `minus` is the one under which every relation closes; `plus`
        /// demonstrates the failing boost–momentum sector.
        #[arg(long, value_enum, default_value_t = BoostSignArg::Minus)]
        boost_sign: BoostSignArg,
    },
    /// Evaluate the deformed mass-shell function, or solve it for k0.
    #[command(group(ArgGroup::new("mode").required(true).args(["k0", "solve"])))]
    #[command(allow_negative_numbers = true)]
    Dispersion {
        /// Deformation scale; must be positive.
        #[arg(long)]
        kappa: f64,
        /// Mass parameter.
        #[arg(long)]
        mass: f64,
        /// Spatial momentum as three comma-separated numbers a,b,c.
        #[arg(long, value_parser = parse_kvec, allow_hyphen_values = true)]
        kvec: Kvec,
        /// Evaluate the residual at this time component.
        #[arg(long)]
        k0: Option<f64>,
        /// Solve for the nonnegative root k0 instead.
        #[arg(long)]
        solve: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OperatorName {
    #[value(name = "P0", alias = "p0")]
    P0,
    #[value(name = "P1", alias = "p1")]
    P1,
    #[value(name = "P2", alias = "p2")]
    P2,
    #[value(name = "P3", alias = "p3")]
    P3,
    #[value(name = "M1", alias = "m1")]
    M1,
    #[value(name = "M2", alias = "m2")]
    M2,
    #[value(name = "M3", alias = "m3")]
    M3,
    #[value(name = "N1", alias = "n1")]
    N1,
    #[value(name = "N2", alias = "n2")]
    N2,
    #[value(name = "N3", alias = "n3")]
    N3,
    #[value(name = "box")]
    BoxOp,
}

impl OperatorName {
    fn label(self) -> &'static str {
        match self {
            OperatorName::BoxOp => "box",
            OperatorName::P0 => "P0",
            OperatorName::P1 => "P1",
            OperatorName::P2 => "P2",
            OperatorName::P3 => "P3",
            OperatorName::M1 => "M1",
            OperatorName::M2 => "M2",
            OperatorName::M3 => "M3",
            OperatorName::N1 => "N1",
            OperatorName::N2 => "N2",
            OperatorName::N3 => "N3",
        }
    }

    fn apply(self, f: &OrderedElement) -> OrderedElement {
        let gen = match self {
            OperatorName::BoxOp => return deformed_box(f),
            OperatorName::P0 => Generator::P0,
            OperatorName::P1 => Generator::P1,
            OperatorName::P2 => Generator::P2,
            OperatorName::P3 => Generator::P3,
            OperatorName::M1 => Generator::M1,
            OperatorName::M2 => Generator::M2,
            OperatorName::M3 => Generator::M3,
            OperatorName::N1 => Generator::N1,
            OperatorName::N2 => Generator::N2,
            OperatorName::N3 => Generator::N3,
        };
        act_generator(gen, f, BoostSign::default())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteName {
    Relations,
    Calculus,
    Invariance,
    Leibniz,
}

impl SuiteName {
    fn label(self) -> &'static str {
        match self {
            SuiteName::Relations => "relations",
            SuiteName::Calculus => "calculus",
            SuiteName::Invariance => "invariance",
            SuiteName::Leibniz => "leibniz",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BoostSignArg {
    Minus,
    Plus,
}

impl BoostSignArg {
    fn to_sign(self) -> BoostSign {
        match self {
            BoostSignArg::Minus => BoostSign::Negative,
            BoostSignArg::Plus => BoostSign::Positive,
        }
    }

    fn label(self) -> &'static str {
        match self {
            BoostSignArg::Minus => "minus",
            BoostSignArg::Plus => "plus",
        }
    }
}

/// Spatial momentum wrapper so clap can carry a fixed-size triple.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Kvec(pub [f64; 3]);

fn parse_kvec(s: &str) -> Result<Kvec, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err("expected three comma-separated numbers a,b,c".into());
    }
    let mut v = [0f64; 3];
    for (slot, p) in v.iter_mut().zip(parts) {
        let x: f64 = p
            .trim()
            .parse()
            .map_err(|_| format!("invalid number {p:?}"))?;
        if !x.is_finite() {
            return Err(format!("momentum component {p:?} is not finite"));
        }
        *slot = x;
    }
    Ok(Kvec(v))
}

/// Run a parsed command line; returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    match &cli.command {
        Command::Order { expr } => cmd_order(expr, cli.json),
        Command::D { expr } => cmd_d(expr, cli.json),
        Command::Apply { operator, expr } => cmd_apply(*operator, expr, cli.json),
        Command::Check {
            suite,
            max_degree,
            boost_sign,
        } => cmd_check(*suite, *max_degree, *boost_sign, cli.json),
        Command::Dispersion {
            kappa,
            mass,
            kvec,
            k0,
            solve,
        } => cmd_dispersion(*kappa, *mass, kvec.0, *k0, *solve, cli.json),
    }
}

fn usage_error(message: &str) -> i32 {
    eprintln!("error: {message}");
    2
}

fn parse_ordered(expr: &str) -> Result<OrderedElement, String> {
    Ok(parse_element(expr)?.normal_order())
}

fn cmd_order(expr: &str, json: bool) -> i32 {
    match parse_ordered(expr) {
        Ok(f) => {
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "schema": 1,
                        "command": "order",
                        "input": expr,
                        "result": f.to_string(),
                    })
                );
            } else {
                println!("{f}");
            }
            0
        }
        Err(e) => usage_error(&e),
    }
}

fn cmd_d(expr: &str, json: bool) -> i32 {
    match parse_ordered(expr) {
        Ok(f) => {
            let d = exterior_d(&f);
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "schema": 1,
                        "command": "d",
                        "input": expr,
                        "coefficients": {
                            "t0": d.coeff(FormLabel::T0).to_string(),
                            "t1": d.coeff(FormLabel::T1).to_string(),
                            "t2": d.coeff(FormLabel::T2).to_string(),
                            "t3": d.coeff(FormLabel::T3).to_string(),
                            "tau": d.coeff(FormLabel::Tau).to_string(),
                        },
                    })
                );
            } else {
                println!("{d}");
            }
            0
        }
        Err(e) => usage_error(&e),
    }
}

fn cmd_apply(operator: OperatorName, expr: &str, json: bool) -> i32 {
    match parse_ordered(expr) {
        Ok(f) => {
            let result = operator.apply(&f);
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "schema": 1,
                        "command": "apply",
                        "operator": operator.label(),
                        "input": expr,
                        "result": result.to_string(),
                    })
                );
            } else {
                println!("{result}");
            }
            0
        }
        Err(e) => usage_error(&e),
    }
}

fn cmd_check(suite: SuiteName, max_degree: u32, boost_sign: BoostSignArg, json: bool) -> i32 {
    let sign = boost_sign.to_sign();
    let report: Report = match suite {
        SuiteName::Relations => symmetry::check_relations(max_degree, sign),
        SuiteName::Calculus => check_calculus(max_degree),
        SuiteName::Invariance => symmetry::check_invariance(max_degree, sign),
        SuiteName::Leibniz => symmetry::check_leibniz(max_degree, sign),
    };
    let (passed, total) = report.tally();
    if json {
        println!(
            "{}",
            serde_json::json!({
                "schema": 1,
                "command": "check",
                "suite": suite.label(),
                "max_degree": max_degree,
                "boost_sign": boost_sign.label(),
                "passed": report.passed(),
                "total_cases": total,
                "failed_cases": total - passed,
                "cases": report.cases,
            })
        );
    } else {
        println!("{report}");
    }
    if report.passed() {
        0
    } else {
        1
    }
}

fn cmd_dispersion(
    kappa: f64,
    mass: f64,
    kvec: [f64; 3],
    k0: Option<f64>,
    solve: bool,
    json: bool,
) -> i32 {
    if !kappa.is_finite() || kappa <= 0.0 {
        return usage_error("kappa must be positive");
    }
    if !mass.is_finite() || mass < 0.0 {
        return usage_error("mass must be nonnegative");
    }
    if solve {
        match solve_k0(kvec, kappa, mass) {
            Ok(root) => {
                let residual = dispersion_residual(&Momentum { k0: root, kvec }, kappa, mass)
                    .expect("kappa already validated");
                if json {
                    println!(
                        "{}",
                        serde_json::json!({
                            "schema": 1,
                            "command": "dispersion",
                            "kappa": kappa,
                            "mass": mass,
                            "kvec": kvec,
                            "mode": "solve",
                            "k0": root,
                            "residual": residual,
                        })
                    );
                } else {
                    println!("{root}");
                }
                0
            }
            Err(e) => {
                eprintln!("error: {e}");
                1
            }
        }
    } else {
        let k0 = k0.expect("clap group guarantees one mode");
        if !k0.is_finite() {
            return usage_error("k0 must be finite");
        }
        let residual = dispersion_residual(&Momentum { k0, kvec }, kappa, mass)
            .expect("kappa already validated");
        if json {
            println!(
                "{}",
                serde_json::json!({
                    "schema": 1,
                    "command": "dispersion",
                    "kappa": kappa,
                    "mass": mass,
                    "kvec": kvec,
                    "mode": "residual",
                    "k0": k0,
                    "residual": residual,
                })
            );
        } else {
            println!("{residual}");
        }
        0
    }
}
