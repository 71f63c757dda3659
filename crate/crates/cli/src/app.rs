use std::fs;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use waring_core::apolarity::annihilator_generators;
use waring_core::harmonic::h_basis;
use waring_core::oracle::real_root_count;
use waring_core::{
    apply, classify_with, decompose, verify, BinaryForm, DecomposeOptions, Error, Scalar,
};

use crate::parse::{parse_form, parse_linear_form, parse_omega, parse_operator, ParseError};
use crate::render::{certificate_text, CertificateJson, ErrorBody, ErrorJson};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    VerificationFailed = 1,
    Usage = 2,
    OutOfFamily = 3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Exact Waring ranks and decompositions of binary forms.
#[derive(Debug, Parser)]
#[command(name = "waring", version, about)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimal real Waring decomposition with a rank certificate.
    Decompose {
        /// Form such as "2*h(4,0) + h(4,1)"; "-" reads standard input.
        #[arg(allow_hyphen_values = true)]
        form: String,
        /// Linear form that must appear in the decomposition.
        #[arg(long, allow_hyphen_values = true)]
        through: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Quadratic annihilator "a,b,c" (a dx^2 + 2b dx dy + c dy^2) or an operator expression.
        #[arg(long, allow_hyphen_values = true)]
        omega: Option<String>,
        /// Verify the result (default).
        #[arg(long, overrides_with = "no_check")]
        check: bool,
        /// Skip verification.
        #[arg(long)]
        no_check: bool,
    },
    /// Classification and Waring rank.
    Rank {
        #[arg(allow_hyphen_values = true)]
        form: String,
        #[arg(long, allow_hyphen_values = true)]
        omega: Option<String>,
    },
    /// Re-check a JSON decomposition written by `decompose --format json`.
    Verify {
        /// JSON file, or "-" for standard input.
        file: String,
        /// Form to check against instead of the one recorded in the file.
        #[arg(long, allow_hyphen_values = true)]
        form: Option<String>,
    },
    /// Generators of the apolar ideal of a harmonic form.
    Annihilator {
        #[arg(allow_hyphen_values = true)]
        form: String,
    },
    /// The harmonic basis h(d,0), h(d,1).
    HarmonicBasis { degree: usize },
    /// Apply a differential operator to a form.
    Apply {
        /// Operator such as "dx^2 - dy^2".
        #[arg(allow_hyphen_values = true)]
        operator: String,
        #[arg(allow_hyphen_values = true)]
        form: String,
    },
    /// Count real projective roots of a rational form.
    Roots {
        #[arg(allow_hyphen_values = true)]
        form: String,
    },
}

enum Failure {
    Parse(ParseError),
    Core(Error),
    Io(String),
    Verification(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> (ExitCode, &'static str) {
        match self {
            Failure::Parse(_) => (ExitCode::Usage, "parse-error"),
            Failure::Io(_) => (ExitCode::Usage, "io-error"),
            Failure::Verification(_) => (ExitCode::VerificationFailed, "verification-failed"),
            Failure::Core(e) => match e {
                Error::OutOfFamily | Error::NotHarmonic { .. } => (ExitCode::OutOfFamily, "out-of-family"),
                Error::RetryExhausted { .. } | Error::CertificateFailure { .. } => {
                    (ExitCode::VerificationFailed, "engine-failure")
                }
                Error::NotAnnihilated { .. } => (ExitCode::Usage, "not-annihilated"),
                Error::UnsupportedRequest(_) => (ExitCode::Usage, "unsupported-request"),
                _ => (ExitCode::Usage, "invalid-input"),
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Parse(e) => e.to_string(),
            Failure::Core(e) => e.to_string(),
            Failure::Io(m) | Failure::Verification(m) => m.clone(),
        }
    }
}

struct Ctx<'a> {
    format: Format,
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn text_or_stdin(&mut self, arg: &str) -> Result<String, Failure> {
        if arg != "-" {
            return Ok(arg.to_owned());
        }
        let mut s = String::new();
        self.stdin
            .read_to_string(&mut s)
            .map_err(|e| Failure::Io(format!("reading standard input: {e}")))?;
        Ok(s.trim().to_owned())
    }

    fn form(&mut self, arg: &str) -> Result<(String, BinaryForm), Failure> {
        let text = self.text_or_stdin(arg)?;
        let f = parse_form(&text)?;
        Ok((text, f))
    }

    fn emit<T: Serialize>(&mut self, json: &T, text: impl FnOnce() -> String) -> Result<(), Failure> {
        let s = match self.format {
            Format::Json => serde_json::to_string_pretty(json).expect("serializable") + "\n",
            Format::Text => text(),
        };
        self.out
            .write_all(s.as_bytes())
            .map_err(|e| Failure::Io(format!("writing output: {e}")))
    }
}

#[derive(Serialize)]
struct FormJson {
    form: String,
    degree: usize,
    coeffs: Vec<Scalar>,
}

impl FormJson {
    fn new(f: &BinaryForm) -> Self {
        FormJson {
            form: f.to_string(),
            degree: f.degree(),
            coeffs: f.coeffs().to_vec(),
        }
    }
}

fn run_command(cmd: Command, ctx: &mut Ctx<'_>) -> Result<ExitCode, Failure> {
    match cmd {
        Command::Decompose {
            form,
            through,
            seed,
            omega,
            check: _,
            no_check,
        } => {
            let (text, f) = ctx.form(&form)?;
            let opts = DecomposeOptions {
                through: through.as_deref().map(parse_linear_form).transpose()?,
                seed,
                omega: omega.as_deref().map(parse_omega).transpose()?,
            };
            let outcome = decompose(&f, &opts)?;
            let mut doc = CertificateJson::new(Some(&text), &f, &outcome.certificate, Some(&outcome.decomposition));
            doc.extrapolated = outcome.extrapolated;
            let mut code = ExitCode::Success;
            if !no_check {
                let ok = verify(&f, &outcome.decomposition, outcome.certificate.rank, true).passed();
                doc.verified = Some(ok);
                if !ok {
                    code = ExitCode::VerificationFailed;
                }
            }
            ctx.emit(&doc, || certificate_text(&doc))?;
            Ok(code)
        }
        Command::Rank { form, omega } => {
            let (text, f) = ctx.form(&form)?;
            let omega = omega.as_deref().map(parse_omega).transpose()?;
            let cert = classify_with(&f, omega.as_ref())?;
            let doc = CertificateJson::new(Some(&text), &f, &cert, cert.decomposition.as_ref());
            ctx.emit(&doc, || certificate_text(&doc))?;
            Ok(if cert.rank.is_some() { ExitCode::Success } else { ExitCode::OutOfFamily })
        }
        Command::Verify { file, form } => {
            let raw = if file == "-" {
                ctx.text_or_stdin("-")?
            } else {
                fs::read_to_string(&file).map_err(|e| Failure::Io(format!("{file}: {e}")))?
            };
            let doc: CertificateJson = serde_json::from_str(&raw)
                .map_err(|e| Failure::Parse(ParseError::Syntax { pos: e.column().saturating_sub(1), message: e.to_string() }))?;
            let f = match form {
                Some(t) => ctx.form(&t)?.1,
                None => parse_form(&doc.form)?,
            };
            let report = verify(&f, &doc.decomposition(), doc.rank, true);
            let passed = report.passed();
            #[derive(Serialize)]
            struct Out<'a> {
                form: String,
                passed: bool,
                report: &'a waring_core::VerificationReport,
            }
            let out = Out { form: f.to_string(), passed, report: &report };
            ctx.emit(&out, || {
                let mark = |b: bool| if b { "ok" } else { "FAILED" };
                let opt = |b: Option<bool>| b.map(mark).unwrap_or("skipped");
                format!(
                    "single extension: {}\ndegree: {}\nexpansion: {}\nnonzero coefficients: {}\npairwise non-proportional: {}\nrank: {}\napolarity: {}\nverified: {}\n",
                    mark(report.single_extension),
                    mark(report.degree_matches),
                    mark(report.expansion_matches),
                    mark(report.lambdas_nonzero),
                    mark(report.pairwise_non_proportional),
                    opt(report.rank_matches),
                    opt(report.apolarity),
                    if passed { "yes" } else { "NO" },
                )
            })?;
            if passed {
                Ok(ExitCode::Success)
            } else {
                Err(Failure::Verification("decomposition does not verify".into()))
            }
        }
        Command::Annihilator { form } => {
            let (_, f) = ctx.form(&form)?;
            let pair = annihilator_generators(&f)?;
            #[derive(Serialize)]
            struct Out {
                omega: FormJson,
                nabla: FormJson,
            }
            let as_form = |o: &waring_core::DiffOperator| FormJson {
                form: o.to_string(),
                degree: o.degree(),
                coeffs: o.coeffs().to_vec(),
            };
            let out = Out { omega: as_form(&pair.omega), nabla: as_form(&pair.nabla) };
            ctx.emit(&out, || format!("omega: {}\nnabla: {}\n", pair.omega, pair.nabla))?;
            Ok(ExitCode::Success)
        }
        Command::HarmonicBasis { degree } => {
            let (h0, h1) = h_basis(degree)?;
            #[derive(Serialize)]
            struct Out {
                h0: FormJson,
                h1: FormJson,
            }
            let out = Out { h0: FormJson::new(&h0), h1: FormJson::new(&h1) };
            ctx.emit(&out, || format!("h({degree},0) = {h0}\nh({degree},1) = {h1}\n"))?;
            Ok(ExitCode::Success)
        }
        Command::Apply { operator, form } => {
            let op = parse_operator(&ctx.text_or_stdin(&operator)?)?;
            let (_, f) = ctx.form(&form)?;
            let g = apply(&op, &f);
            ctx.emit(&FormJson::new(&g), || format!("{g}\n"))?;
            Ok(ExitCode::Success)
        }
        Command::Roots { form } => {
            let (_, f) = ctx.form(&form)?;
            let (distinct, total) = real_root_count(&f)?;
            #[derive(Serialize)]
            struct Out {
                degree: usize,
                distinct: usize,
                total: usize,
            }
            let out = Out { degree: f.degree(), distinct, total };
            ctx.emit(&out, || {
                format!("degree: {}\ndistinct real roots: {distinct}\nwith multiplicity: {total}\n", f.degree())
            })?;
            Ok(ExitCode::Success)
        }
    }
}

/// Runs one parsed invocation; errors go to `err`.
pub fn run(cli: Cli, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> ExitCode {
    let format = cli.format;
    let mut ctx = Ctx { format, stdin, out };
    match run_command(cli.command, &mut ctx) {
        Ok(code) => code,
        Err(failure) => {
            let (code, tag) = failure.code();
            let msg = failure.message();
            let _ = match format {
                Format::Json => writeln!(
                    err,
                    "{}",
                    serde_json::to_string(&ErrorJson { error: ErrorBody { code: tag, message: msg } }).expect("serializable")
                ),
                Format::Text => writeln!(err, "error: {msg}"),
            };
            code
        }
    }
}
