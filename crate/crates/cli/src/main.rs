//! `su11`: matrix elements, characters, orthogonality integrals, tensor
//! products and the verification suite from the command line.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage error,
//! 3 domain error (the error name is printed on standard error).

mod output;

use std::ffi::OsString;
use std::io::{self, Write};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{ArgGroup, Args, Parser, Subcommand};
use su11::characters::{character, character_cartan, character_compact, Regime};
use su11::num_complex::Complex64;
use su11::orthogonality::{monte_carlo_haar_check, orthogonality_integral, OrthoRequest};
use su11::rep_matrix::matrix_element_cartan;
use su11::tensor_product::{
    abel_character_sum, abel_character_sum_closed_form, abel_character_limit, character_product, decompose,
    multiplicity,
};
use su11::verification::{run_suite, Suite, VerifyConfig};
use su11::{CartanCoords, Error, GroupElement, RepLabel};

use output::{write_records, Format, OutputRecord};

#[derive(Parser)]
#[command(name = "su11", version, about = "Holomorphic discrete series of SU(1,1)")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Matrix elements U^η_{nn'}(g) at Cartan coordinates.
    Elem(ElemArgs),
    /// Character χ^η(g).
    Character(CharacterArgs),
    /// Haar orthogonality integral of two matrix elements.
    Ortho(OrthoArgs),
    /// Tensor-product spectrum, single multiplicities, or the character certification.
    Tensor(TensorArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
}

/// Inclusive index range written `a..b`, `a..=b` or `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct IndexRange {
    start: usize,
    end: usize,
}

impl IndexRange {
    fn iter(self) -> std::ops::RangeInclusive<usize> {
        self.start..=self.end
    }
}

impl FromStr for IndexRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("invalid index '{t}': {e}"));
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if start > end {
            return Err(format!("empty range '{s}'"));
        }
        Ok(Self { start, end })
    }
}

#[derive(Args, Debug, Clone, Copy)]
struct CartanArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    tau: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    phi: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    psi: f64,
}

#[derive(Args)]
struct ElemArgs {
    /// Label η, e.g. 1, 3/2 or 2.5.
    #[arg(long)]
    eta: RepLabel,
    /// Row index or inclusive range.
    #[arg(long)]
    n: IndexRange,
    /// Column index or inclusive range.
    #[arg(long)]
    np: IndexRange,
    #[command(flatten)]
    at: CartanArgs,
}

#[derive(Args)]
#[command(group(ArgGroup::new("element").required(true).args(["theta", "alpha_re", "tau"])))]
struct CharacterArgs {
    #[arg(long)]
    eta: RepLabel,
    /// Compact element h(θ).
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,
    /// Re α; β is taken real and positive.
    #[arg(long, allow_negative_numbers = true)]
    alpha_re: Option<f64>,
    #[arg(long, allow_negative_numbers = true, requires = "alpha_re", default_value_t = 0.0)]
    alpha_im: f64,
    #[arg(long, allow_negative_numbers = true)]
    tau: Option<f64>,
    #[arg(long, allow_negative_numbers = true, requires = "tau", default_value_t = 0.0)]
    phi: f64,
    #[arg(long, allow_negative_numbers = true, requires = "tau", default_value_t = 0.0)]
    psi: f64,
}

#[derive(Args)]
struct OrthoArgs {
    #[arg(long)]
    eta1: RepLabel,
    #[arg(long)]
    eta2: RepLabel,
    #[arg(long)]
    m: IndexRange,
    #[arg(long)]
    mp: IndexRange,
    #[arg(long)]
    n: IndexRange,
    #[arg(long)]
    np: IndexRange,
    /// Add a Monte Carlo estimate of the full Haar integral.
    #[arg(long)]
    mc: bool,
    #[arg(long, default_value_t = 1_000_000)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args)]
struct TensorArgs {
    #[arg(long)]
    eta1: RepLabel,
    #[arg(long)]
    eta2: RepLabel,
    /// Report the multiplicity of this η₃ only.
    #[arg(long, conflicts_with = "certify")]
    eta3: Option<RepLabel>,
    /// Largest n in the spectrum, or terms in the damped partial sum.
    #[arg(long, default_value_t = 50)]
    nmax: usize,
    /// Compare the damped character sum with the character product.
    #[arg(long, requires = "theta")]
    certify: bool,
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,
    /// Abel damping.
    #[arg(long, default_value_t = 0.99)]
    r: f64,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: Suite,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Monte Carlo samples per spot case.
    #[arg(long, default_value_t = 1_000_000)]
    samples: usize,
    /// Truncation size for unitarity and homomorphism.
    #[arg(long, default_value_t = 60)]
    size: usize,
    /// Corner size for unitarity and homomorphism.
    #[arg(long, default_value_t = 10)]
    k: usize,
    #[arg(long, default_value_t = 8)]
    max_index: usize,
    /// Replace every check's primary tolerance.
    #[arg(long)]
    tol: Option<f64>,
}

fn main() -> ExitCode {
    let code = run(std::env::args_os(), &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code)
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code.
fn run<I, T>(args: I, stdout: &mut impl Write, stderr: &mut impl Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = write!(sink, "{}", e.render());
            return code as u8;
        }
    };
    let result = match cli.command {
        Command::Elem(a) => cmd_elem(&a).map(|r| (r, true)),
        Command::Character(a) => cmd_character(&a).map(|r| (r, true)),
        Command::Ortho(a) => cmd_ortho(&a).map(|r| (r, true)),
        Command::Tensor(a) => cmd_tensor(&a).map(|r| (r, true)),
        Command::Verify(a) => cmd_verify(&a),
    };
    match result {
        Ok((records, ok)) => {
            if let Err(e) = write_records(stdout, cli.format, &records) {
                let _ = writeln!(stderr, "error: writing output: {e}");
                return 1;
            }
            u8::from(!ok)
        }
        Err(e) => {
            // Display already leads with the error name.
            let _ = writeln!(stderr, "error: {e}");
            3
        }
    }
}

fn cmd_elem(a: &ElemArgs) -> Result<Vec<OutputRecord>, Error> {
    let c = CartanCoords::new(a.at.tau, a.at.phi, a.at.psi)?;
    let mut out = Vec::new();
    for n in a.n.iter() {
        for np in a.np.iter() {
            let v = matrix_element_cartan(a.eta, n, np, &c);
            out.push(
                OutputRecord::new("elem", v)
                    .input("eta", a.eta)
                    .input("n", n)
                    .input("np", np)
                    .input("tau", a.at.tau)
                    .input("phi", a.at.phi)
                    .input("psi", a.at.psi),
            );
        }
    }
    Ok(out)
}

fn regime_note(r: Regime) -> String {
    format!("regime={}", r.as_str())
}

fn cmd_character(a: &CharacterArgs) -> Result<Vec<OutputRecord>, Error> {
    let rec = if let Some(theta) = a.theta {
        OutputRecord::new("character", character_compact(a.eta, theta)?)
            .input("eta", a.eta)
            .input("theta", theta)
            .note(regime_note(Regime::EllipticAbel))
    } else if let Some(re) = a.alpha_re {
        let alpha = Complex64::new(re, a.alpha_im);
        let beta_sq = alpha.norm_sqr() - 1.0;
        if beta_sq < 0.0 {
            return Err(Error::InvalidCoordinates(format!("|alpha| = {} is below 1", alpha.norm())));
        }
        let g = GroupElement::from_alpha_beta(alpha, Complex64::new(beta_sq.sqrt(), 0.0))?;
        let v = character(a.eta, &g)?;
        OutputRecord::new("character", v.value)
            .input("eta", a.eta)
            .input("alpha_re", re)
            .input("alpha_im", a.alpha_im)
            .note(regime_note(v.regime))
    } else {
        let tau = a.tau.expect("argument group guarantees one element");
        let c = CartanCoords::new(tau, a.phi, a.psi)?;
        let v = character_cartan(a.eta, c.x(), c.phi(), c.psi())?;
        OutputRecord::new("character", v.value)
            .input("eta", a.eta)
            .input("tau", tau)
            .input("phi", a.phi)
            .input("psi", a.psi)
            .note(regime_note(v.regime))
    };
    Ok(vec![rec])
}

fn cmd_ortho(a: &OrthoArgs) -> Result<Vec<OutputRecord>, Error> {
    let mut out = Vec::new();
    for m in a.m.iter() {
        for mp in a.mp.iter() {
            for n in a.n.iter() {
                for np in a.np.iter() {
                    let req = OrthoRequest::new(a.eta1, a.eta2, m, mp, n, np);
                    let r = orthogonality_integral(&req);
                    let with_inputs = |rec: OutputRecord| {
                        rec.input("eta1", a.eta1)
                            .input("eta2", a.eta2)
                            .input("m", m)
                            .input("mp", mp)
                            .input("n", n)
                            .input("np", np)
                    };
                    out.push(
                        with_inputs(OutputRecord::new("ortho", Complex64::new(r.value, 0.0)))
                            .expected(Complex64::new(r.expected, 0.0))
                            .note(format!(
                                "angular_selected={};formal_dimension={}",
                                r.angular_selected, r.formal_dimension
                            )),
                    );
                    if a.mc {
                        let e = monte_carlo_haar_check(&req, a.samples, a.seed)?;
                        let within = (e.value - r.value).abs() <= 3.0 * e.std_error;
                        out.push(
                            with_inputs(OutputRecord::new("ortho-mc", Complex64::new(e.value, e.imag)))
                                .input("samples", a.samples)
                                .input("seed", a.seed)
                                .expected(Complex64::new(r.value, 0.0))
                                .status(if within { "pass" } else { "fail" })
                                .note(format!("std_error={:e}", e.std_error)),
                        );
                    }
                }
            }
        }
    }
    Ok(out)
}

fn cmd_tensor(a: &TensorArgs) -> Result<Vec<OutputRecord>, Error> {
    let base = |rec: OutputRecord| rec.input("eta1", a.eta1).input("eta2", a.eta2);
    if let Some(eta3) = a.eta3 {
        let m = multiplicity(a.eta1, a.eta2, eta3);
        return Ok(vec![base(OutputRecord::new("tensor", Complex64::new(m.into(), 0.0))).input("eta3", eta3)]);
    }
    if a.certify {
        let theta = a.theta.expect("clap requires theta with certify");
        let product = character_product(a.eta1, a.eta2, theta)?;
        let damped = abel_character_sum_closed_form(a.eta1, a.eta2, theta, a.r)?;
        let limit = abel_character_limit(a.eta1, a.eta2, theta)?;
        let partial = abel_character_sum(a.eta1, a.eta2, theta, a.r, a.nmax)?;
        return Ok(vec![
            base(OutputRecord::new("tensor-certify", damped))
                .input("theta", theta)
                .input("r", a.r)
                .expected(product)
                .note(format!("abel_limit_error={:e}", (limit - product).norm())),
            base(OutputRecord::new("tensor-partial-sum", partial))
                .input("theta", theta)
                .input("r", a.r)
                .input("nmax", a.nmax)
                .expected(damped),
        ]);
    }
    Ok(decompose(a.eta1, a.eta2, a.nmax)
        .terms
        .iter()
        .map(|t| base(OutputRecord::new("tensor", Complex64::new(t.multiplicity.into(), 0.0))).input("eta3", t.eta3))
        .collect())
}

fn cmd_verify(a: &VerifyArgs) -> Result<(Vec<OutputRecord>, bool), Error> {
    if a.size == 0 || a.k > a.size {
        return Err(Error::InvalidParams(format!("need 1 <= k <= size (got k={}, size={})", a.k, a.size)));
    }
    if a.samples < 2 {
        return Err(Error::InvalidParams("samples must be at least 2".into()));
    }
    let cfg = VerifyConfig {
        seed: a.seed,
        samples: a.samples,
        size: a.size,
        k: a.k,
        max_index: a.max_index,
        tol: a.tol,
    };
    let checks = run_suite(a.suite, &cfg);
    let ok = checks.iter().all(|c| c.passed);
    let records = checks
        .into_iter()
        .map(|c| {
            OutputRecord::new("verify", Complex64::new(c.metric, 0.0))
                .input("id", c.id)
                .input("suite", c.suite)
                .input("name", c.name)
                .input("tolerance", format!("{:e}", c.tolerance))
                .status(if c.passed { "pass" } else { "fail" })
                .note(c.detail)
        })
        .collect();
    Ok((records, ok))
}
