//! TOML manifests describing coefficient sequences and solver settings.
//!
//! ```toml
//! prime = 2
//! alpha = ["1/4"]
//! max_degree = 8
//!
//! [[sequence]]
//! prefix = ["1", "1"]
//! tail = "zero"
//!
//! [[sequence]]
//! prefix = []
//! tail = ["1", "0"]
//! scale = "2"
//! ```
//!
//! Scalars are strings in the expression syntax of [`crate::parse`]. `scale`
//! turns a periodic tail into `a_k = block[..] * scale^(p^k + 1)`.

use serde::{Deserialize, Serialize};

use crate::arith::{Cyclotomic, RootOfUnity};
use crate::error::{Error, Result};
use crate::parse::{parse_alpha, parse_scalar};
use crate::prufer::{CoeffSequence, Tail};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Manifest {
    pub prime: u64,
    pub sequences: Vec<CoeffSequence>,
    pub alphas: Vec<RootOfUnity>,
    pub max_degree: Option<u32>,
    pub levels: Option<u32>,
    pub k0: Option<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifest {
    prime: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    alpha: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    max_degree: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    levels: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    k0: Option<usize>,
    #[serde(default, rename = "sequence")]
    sequences: Vec<RawSequence>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSequence {
    #[serde(default)]
    prefix: Vec<String>,
    tail: RawTail,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    scale: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum RawTail {
    Word(String),
    Block(Vec<String>),
}

fn scalars(xs: &[String]) -> Result<Vec<Cyclotomic>> {
    xs.iter().map(|s| parse_scalar(s)).collect()
}

fn strings(xs: &[Cyclotomic]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

impl RawSequence {
    fn build(&self, p: u64) -> Result<CoeffSequence> {
        let prefix = scalars(&self.prefix)?;
        let block = match &self.tail {
            RawTail::Word(w) if w == "zero" => None,
            RawTail::Word(w) => {
                return Err(Error::Malformed(format!(
                    "tail must be \"zero\" or a list, found \"{w}\""
                )))
            }
            RawTail::Block(b) => Some(scalars(b)?),
        };
        let tail = match (block, &self.scale) {
            (None, None) => Tail::Zero,
            (None, Some(_)) => {
                return Err(Error::Malformed("scale given for a zero tail".into()));
            }
            (Some(block), None) => Tail::Periodic(block),
            (Some(block), Some(s)) => Tail::Twisted {
                block,
                scale: parse_scalar(s)?,
            },
        };
        CoeffSequence::new(p, prefix, tail)
    }

    fn from_sequence(s: &CoeffSequence) -> Self {
        let (tail, scale) = match s.tail() {
            Tail::Zero => (RawTail::Word("zero".into()), None),
            Tail::Periodic(b) => (RawTail::Block(strings(b)), None),
            Tail::Twisted { block, scale } => {
                (RawTail::Block(strings(block)), Some(scale.to_string()))
            }
        };
        Self {
            prefix: strings(s.prefix()),
            tail,
            scale,
        }
    }
}

impl Manifest {
    pub fn new(prime: u64) -> Self {
        Self {
            prime,
            sequences: Vec::new(),
            alphas: Vec::new(),
            max_degree: None,
            levels: None,
            k0: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawManifest =
            toml::from_str(text).map_err(|e| Error::Malformed(format!("manifest: {e}")))?;
        let p = raw.prime;
        let sequences = raw
            .sequences
            .iter()
            .map(|s| s.build(p))
            .collect::<Result<Vec<_>>>()?;
        let alphas = raw
            .alpha
            .iter()
            .map(|a| parse_alpha(p, a))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            prime: p,
            sequences,
            alphas,
            max_degree: raw.max_degree,
            levels: raw.levels,
            k0: raw.k0,
        })
    }

    /// Canonical text; `Manifest::parse` inverts it.
    pub fn print(&self) -> String {
        let raw = RawManifest {
            prime: self.prime,
            alpha: self.alphas.iter().map(ToString::to_string).collect(),
            max_degree: self.max_degree,
            levels: self.levels,
            k0: self.k0,
            sequences: self
                .sequences
                .iter()
                .map(RawSequence::from_sequence)
                .collect(),
        };
        toml::to_string(&raw).expect("manifest serializes")
    }
}
