//! Command-line front end. Every command renders a plain-text report and an
//! exit code: 0 for success or a positive verdict, 1 for a negative verdict or
//! an obstruction, 2 for invalid input.

use std::fmt::Write as _;
use std::io::Read;

use clap::{Args, Parser, Subcommand};

use crate::arith::RootOfUnity;
use crate::conjclass::{
    differ_infinitely, necessary_condition, omega0_family, verify_subgroup_conjugator,
    CertificateReason, ConjObstructionReport, SEARCH_CLASS,
};
use crate::endo::TriangularAffine;
use crate::error::{Error, Result};
use crate::linearize::{
    minimal_linearizer_degree, solve_linearization, LinearizationProblem, LinearizationResult,
    Obstruction,
};
use crate::manifest::Manifest;
use crate::parse::{parse_alpha, parse_endo, parse_scalar, parse_scalar_list};
use crate::prufer::{conj_closed_form, verify_formula, CoeffSequence, Tail};

#[derive(Debug, Parser)]
#[command(
    name = "prufer-aut",
    version,
    about = "Exact computations with quasi-cyclic groups of plane polynomial automorphisms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Where a coefficient sequence comes from: flags, a manifest, or both
/// (flags win).
#[derive(Debug, Clone, Default, Args)]
pub struct SequenceArgs {
    /// The prime p
    #[arg(long = "p")]
    pub p: Option<u64>,
    /// Comma-separated prefix a_0, ..., a_{L-1}
    #[arg(long, allow_hyphen_values = true)]
    pub prefix: Option<String>,
    /// `zero` or a comma-separated repeating block
    #[arg(long, allow_hyphen_values = true)]
    pub tail: Option<String>,
    /// Twist the tail by scale^(p^k + 1)
    #[arg(long, allow_hyphen_values = true)]
    pub scale: Option<String>,
    /// TOML manifest path, or `-` for stdin
    #[arg(long)]
    pub manifest: Option<String>,
}

/// The second sequence `b` of a pair.
#[derive(Debug, Clone, Default, Args)]
pub struct SecondSequenceArgs {
    #[arg(id = "b_prefix", long = "b-prefix", allow_hyphen_values = true)]
    pub prefix: Option<String>,
    #[arg(id = "b_tail", long = "b-tail", allow_hyphen_values = true)]
    pub tail: Option<String>,
    #[arg(id = "b_scale", long = "b-scale", allow_hyphen_values = true)]
    pub scale: Option<String>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Compose two maps, applying FIRST before SECOND
    Compose { first: String, second: String },
    /// Invert a triangular map (gamma*x1 + g(x2), beta*x2 + beta0)
    Invert { theta: String },
    /// Order of a map, searched up to --max-order
    Order {
        map: String,
        #[arg(long, default_value_t = 64)]
        max_order: u64,
    },
    /// theta^-1 MAP theta for a triangular theta
    Conjugate {
        map: String,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
    },
    /// Compare the closed-form conjugate with brute-force composition
    VerifyFormula {
        #[command(flatten)]
        seq: SequenceArgs,
        /// Exponent fraction j/p^n; repeatable. Defaults to all elements up to --levels
        #[arg(long)]
        alpha: Vec<String>,
        #[arg(long)]
        levels: Option<u32>,
    },
    /// Find a triangular linearizer of bounded degree
    Linearize {
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        #[arg(long)]
        max_degree: u32,
    },
    /// Least linearizer degree for the conjugates of given alphas
    MinDegree {
        #[command(flatten)]
        seq: SequenceArgs,
        #[arg(long)]
        alpha: Vec<String>,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Necessary condition for G_p^a and G_p^b to be conjugate
    NonconjCheck {
        #[command(flatten)]
        seq: SequenceArgs,
        #[command(flatten)]
        b: SecondSequenceArgs,
        #[arg(long)]
        k0: Option<usize>,
    },
    /// Check a candidate conjugator between G_p^a and G_p^b level by level
    VerifyConjugator {
        #[command(flatten)]
        seq: SequenceArgs,
        #[command(flatten)]
        b: SecondSequenceArgs,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        #[arg(long)]
        levels: Option<u32>,
    },
    /// Pairwise infinitely-differing binary sequences
    OmegaFamily {
        #[arg(long)]
        count: usize,
    },
}

/// Rendered output of one command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub exit_code: i32,
}

impl Report {
    fn ok(text: String) -> Self {
        Self { text, exit_code: 0 }
    }

    fn verdict(text: String, positive: bool) -> Self {
        Self {
            text,
            exit_code: if positive { 0 } else { 1 },
        }
    }

    fn error(e: &Error) -> Self {
        Self {
            text: format!("error: {e}\n"),
            exit_code: 2,
        }
    }
}

const DEFAULT_LEVELS: u32 = 3;
const DEFAULT_MAX_DEGREE: u32 = 64;
const EXTRA_TRUNCATIONS: usize = 2;

fn load_manifest(path: &str, stdin: &mut dyn Read) -> Result<Manifest> {
    let text = if path == "-" {
        let mut buf = String::new();
        stdin
            .read_to_string(&mut buf)
            .map_err(|e| Error::InvalidArgument(format!("reading stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("reading {path}: {e}")))?
    };
    Manifest::parse(&text)
}

fn build_sequence(
    p: u64,
    prefix: Option<&str>,
    tail: Option<&str>,
    scale: Option<&str>,
) -> Result<CoeffSequence> {
    let prefix = parse_scalar_list(prefix.unwrap_or(""))?;
    let tail = match tail.map(str::trim) {
        None | Some("zero") => {
            if scale.is_some() {
                return Err(Error::InvalidArgument("scale given for a zero tail".into()));
            }
            Tail::Zero
        }
        Some(block) => {
            let block = parse_scalar_list(block)?;
            match scale {
                Some(s) => Tail::Twisted {
                    block,
                    scale: parse_scalar(s)?,
                },
                None => Tail::Periodic(block),
            }
        }
    };
    CoeffSequence::new(p, prefix, tail)
}

/// Resolved inputs shared by the sequence commands.
struct Inputs {
    prime: u64,
    manifest: Option<Manifest>,
}

impl Inputs {
    fn resolve(args: &SequenceArgs, stdin: &mut dyn Read) -> Result<Self> {
        let manifest = args
            .manifest
            .as_deref()
            .map(|path| load_manifest(path, stdin))
            .transpose()?;
        let prime = match (args.p, &manifest) {
            (Some(p), Some(m)) if p != m.prime => return Err(Error::DomainMismatch(p, m.prime)),
            (Some(p), _) => p,
            (None, Some(m)) => m.prime,
            (None, None) => return Err(Error::InvalidArgument("--p is required".into())),
        };
        Ok(Self { prime, manifest })
    }

    fn sequence(
        &self,
        index: usize,
        prefix: &Option<String>,
        tail: &Option<String>,
        scale: &Option<String>,
    ) -> Result<CoeffSequence> {
        if prefix.is_some() || tail.is_some() {
            return build_sequence(
                self.prime,
                prefix.as_deref(),
                tail.as_deref(),
                scale.as_deref(),
            );
        }
        self.manifest
            .as_ref()
            .and_then(|m| m.sequences.get(index).cloned())
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "sequence #{} not given by flags or manifest",
                    index + 1
                ))
            })
    }

    fn first(&self, args: &SequenceArgs) -> Result<CoeffSequence> {
        self.sequence(0, &args.prefix, &args.tail, &args.scale)
    }

    fn second(&self, args: &SecondSequenceArgs) -> Result<CoeffSequence> {
        self.sequence(1, &args.prefix, &args.tail, &args.scale)
    }

    fn alphas(&self, flags: &[String], levels: Option<u32>) -> Result<Vec<RootOfUnity>> {
        if !flags.is_empty() {
            return flags.iter().map(|a| parse_alpha(self.prime, a)).collect();
        }
        if let Some(m) = self.manifest.as_ref().filter(|m| !m.alphas.is_empty()) {
            return Ok(m.alphas.clone());
        }
        let levels = levels
            .or(self.manifest.as_ref().and_then(|m| m.levels))
            .unwrap_or(DEFAULT_LEVELS);
        RootOfUnity::all_up_to_level(self.prime, levels)
    }

    fn setting<T: Copy>(
        &self,
        flag: Option<T>,
        from: impl Fn(&Manifest) -> Option<T>,
        default: T,
    ) -> T {
        flag.or_else(|| self.manifest.as_ref().and_then(from))
            .unwrap_or(default)
    }
}

fn parse_triangular(text: &str) -> Result<TriangularAffine> {
    let e = parse_endo(text)?;
    TriangularAffine::from_endo(&e).ok_or_else(|| {
        Error::Malformed(format!(
            "{e} is not of the form (gamma*x1 + g(x2), beta*x2 + beta0) with gamma, beta nonzero"
        ))
    })
}

fn check_prime(expected: u64, found: Option<u64>) -> Result<()> {
    match found {
        Some(q) if q != expected => Err(Error::DomainMismatch(expected, q)),
        _ => Ok(()),
    }
}

/// Run a command, reading manifests given as `-` from the process stdin.
pub fn run_command(cmd: &Command) -> Report {
    run_command_with_stdin(cmd, &mut std::io::stdin())
}

pub fn run_command_with_stdin(cmd: &Command, stdin: &mut dyn Read) -> Report {
    execute(cmd, stdin).unwrap_or_else(|e| Report::error(&e))
}

fn execute(cmd: &Command, stdin: &mut dyn Read) -> Result<Report> {
    match cmd {
        Command::Compose { first, second } => {
            let (f, g) = (parse_endo(first)?, parse_endo(second)?);
            if let (Some(p), Some(q)) = (f.prime(), g.prime()) {
                check_prime(p, Some(q))?;
            }
            Ok(Report::ok(format!("{}\n", f.compose(&g))))
        }
        Command::Invert { theta } => {
            let t = parse_triangular(theta)?;
            Ok(Report::ok(format!("{}\n", t.inverse())))
        }
        Command::Order { map, max_order } => {
            if *max_order < 1 {
                return Err(Error::InvalidArgument(
                    "--max-order must be at least 1".into(),
                ));
            }
            let e = parse_endo(map)?;
            Ok(match e.order(*max_order) {
                Some(k) => Report::ok(format!("order = {k}\n")),
                None => Report::verdict(format!("order > {max_order}\n"), false),
            })
        }
        Command::Conjugate { map, theta } => {
            let e = parse_endo(map)?;
            let t = parse_triangular(theta)?;
            if let Some(p) = e.prime() {
                check_prime(p, t.to_endo().prime())?;
            }
            Ok(Report::ok(format!("{}\n", e.conjugate(&t))))
        }
        Command::VerifyFormula { seq, alpha, levels } => {
            let inputs = Inputs::resolve(seq, stdin)?;
            let s = inputs.first(seq)?;
            let alphas = inputs.alphas(alpha, *levels)?;
            let mut body = String::new();
            let mut all = true;
            for a in &alphas {
                let n = a.level() as usize;
                let ok = verify_formula(&s, a, n + EXTRA_TRUNCATIONS);
                all &= ok;
                let _ = writeln!(
                    body,
                    "alpha = {a}: {} [truncations {}..={}] {}",
                    if ok { "match" } else { "MISMATCH" },
                    n,
                    n + EXTRA_TRUNCATIONS,
                    conj_closed_form(&s, a)
                );
            }
            let head = if all {
                "OK: formula matches composition"
            } else {
                "FAILED: formula differs from composition"
            };
            Ok(Report::verdict(
                format!("{head}\nsequence: {s}\n{body}"),
                all,
            ))
        }
        Command::Linearize { target, max_degree } => {
            let e = parse_endo(target)?;
            let prob = LinearizationProblem::new(e, *max_degree)?;
            Ok(match solve_linearization(&prob)? {
                LinearizationResult::Found { theta, h } => Report::ok(format!(
                    "FOUND: triangular linearizer\ntheta = {theta}\nh = {h}\n"
                )),
                LinearizationResult::Obstructed(ob) => {
                    let head = match ob {
                        Obstruction::Resonant { .. } => {
                            "OBSTRUCTION: no triangular linearizer under any degree bound"
                                .to_string()
                        }
                        Obstruction::DegreeBound { .. } => {
                            format!(
                                "OBSTRUCTION: no triangular linearizer with deg g <= {max_degree}"
                            )
                        }
                    };
                    Report::verdict(
                        format!(
                            "{head}\nobstruction degree = {}\ndetail = {ob}\n",
                            ob.degree()
                        ),
                        false,
                    )
                }
            })
        }
        Command::MinDegree {
            seq,
            alpha,
            max_degree,
        } => {
            let inputs = Inputs::resolve(seq, stdin)?;
            let s = inputs.first(seq)?;
            let alphas = inputs.alphas(alpha, None)?;
            let bound = inputs.setting(*max_degree, |m| m.max_degree, DEFAULT_MAX_DEGREE);
            let mut body = String::new();
            let mut all = true;
            for a in &alphas {
                match minimal_linearizer_degree(&s, a, bound)? {
                    Some(d) => {
                        let _ = writeln!(body, "alpha = {a}: minimal degree {d}");
                    }
                    None => {
                        all = false;
                        let _ = writeln!(body, "alpha = {a}: none up to {bound}");
                    }
                }
            }
            Ok(Report::verdict(format!("sequence: {s}\n{body}"), all))
        }
        Command::NonconjCheck { seq, b, k0 } => {
            let inputs = Inputs::resolve(seq, stdin)?;
            let (sa, sb) = (inputs.first(seq)?, inputs.second(b)?);
            let k0 = inputs.setting(*k0, |m| m.k0, sa.prefix().len().max(sb.prefix().len()));
            Ok(match necessary_condition(&sa, &sb, k0)? {
                ConjObstructionReport::Satisfiable(w) => {
                    let beta0 = if w.beta0_forced_zero {
                        "0 (forced)"
                    } else {
                        "free"
                    };
                    Report::ok(format!(
                        "CONDITION SATISFIABLE\nbeta = {}\ngamma = {}\nbeta0 = {beta0}\nvalid from k = {}\n",
                        w.beta, w.gamma, w.valid_from
                    ))
                }
                ConjObstructionReport::NonConjugate(cert) => {
                    let reason = match cert.reason {
                        CertificateReason::SupportMismatch => "support mismatch",
                        CertificateReason::RatioMismatch => "ratio mismatch",
                    };
                    let offsets: Vec<String> =
                        cert.offsets.iter().map(ToString::to_string).collect();
                    Report::verdict(
                        format!(
                            "NON-CONJUGATE CERTIFICATE\nreason = {reason}\nfailing indices = (preamble {}, period {}, offsets [{}])\nsearched class = {SEARCH_CLASS}\n",
                            cert.preamble,
                            cert.period,
                            offsets.join(", ")
                        ),
                        false,
                    )
                }
            })
        }
        Command::VerifyConjugator {
            seq,
            b,
            theta,
            levels,
        } => {
            let inputs = Inputs::resolve(seq, stdin)?;
            let (sa, sb) = (inputs.first(seq)?, inputs.second(b)?);
            let t = parse_triangular(theta)?;
            check_prime(inputs.prime, t.to_endo().prime())?;
            let levels = inputs.setting(*levels, |m| m.levels, DEFAULT_LEVELS);
            let ok = verify_subgroup_conjugator(&sa, &sb, &t, levels)?;
            let text = if ok {
                format!("CONJUGATOR VERIFIED at levels 1..={levels}\ntheta = {t}\n")
            } else {
                format!("CONJUGATOR REJECTED at levels 1..={levels}\ntheta = {t}\n")
            };
            Ok(Report::verdict(text, ok))
        }
        Command::OmegaFamily { count } => {
            let fam = omega0_family(*count)?;
            let mut text = String::new();
            for (i, s) in fam.iter().enumerate() {
                let _ = writeln!(text, "sequence {i} = {s}");
            }
            let mut good = 0;
            let mut total = 0;
            for i in 0..fam.len() {
                for j in i + 1..fam.len() {
                    total += 1;
                    good += differ_infinitely(&fam[i], &fam[j]) as usize;
                }
            }
            let _ = writeln!(text, "pairs differing infinitely = {good}/{total}");
            Ok(Report::verdict(text, good == total))
        }
    }
}
