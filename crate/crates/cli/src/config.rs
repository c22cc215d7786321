//! The algebra a command runs in: a JSON document, then flag overrides.
//!
//! ```json
//! {"base": "laurent", "sign": "-", "q": "2", "p": [[1, "1"], [-1, "-2"]]}
//! {"family": "b", "q": "2", "n": 3, "bound": 4}
//! ```
//!
//! `p` is either a list of `[exponent, coefficient]` pairs or an expression
//! in `x` such as `"x^2 + 1"`.

use std::io::Read;
use std::path::PathBuf;

use clap::Args;
use oresmooth::basering::BasePoly;
use oresmooth::hopf::HopfFamily;
use oresmooth::{Algebra, AlgebraSpec, BaseKind, Scalar, SigmaSpec};
use serde::Deserialize;

use crate::error::CliError;
use crate::parse::{parse_element, Context};

pub const DEFAULT_BOUND: u32 = 6;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Rational {
    Text(String),
    Int(i64),
}

impl Rational {
    fn value(&self, field: &str) -> Result<Scalar, CliError> {
        match self {
            Rational::Int(n) => Ok(Scalar::from(*n)),
            Rational::Text(t) => t
                .parse()
                .map_err(|_| CliError::Config(format!("{field} = `{t}` is not a rational"))),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum PolyInput {
    Expr(String),
    Terms(Vec<(i64, Rational)>),
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CliConfig {
    pub base: Option<String>,
    pub sign: Option<String>,
    pub q: Option<Rational>,
    pub r: Option<Rational>,
    pub p: Option<PolyInput>,
    pub family: Option<String>,
    pub n: Option<u32>,
    pub bound: Option<u32>,
}

/// Algebra selection flags shared by every subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct AlgebraArgs {
    /// JSON config file, or `-` for stdin
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Base ring: poly (K[x]) or laurent (K[x, x^-1])
    #[arg(long, global = true)]
    pub base: Option<String>,
    /// Laurent automorphism: + (x -> qx) or - (x -> qx^-1)
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub sign: Option<String>,
    /// Scale q of sigma, a nonzero rational such as 2 or -1/3
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub q: Option<String>,
    /// Shift in sigma(x) = qx + r, polynomial base only
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub r: Option<String>,
    /// p(x) as an expression in x, e.g. "x^2 + 1"
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub p: Option<String>,
    /// Hopf family a, b or c; fixes the algebra
    #[arg(long, global = true)]
    pub family: Option<String>,
    /// Family exponent n
    #[arg(long, global = true)]
    pub n: Option<u32>,
    /// Degree bound |k| + l for sweeps
    #[arg(long, global = true)]
    pub bound: Option<u32>,
}

impl AlgebraArgs {
    /// The config file (if any) with every given flag layered on top.
    pub fn merged(&self) -> Result<CliConfig, CliError> {
        let mut cfg = match &self.config {
            None => CliConfig::default(),
            Some(path) => {
                let text = read_config(path)?;
                serde_json::from_str(&text).map_err(|e| CliError::Config(e.to_string()))?
            }
        };
        if self.base.is_some() {
            cfg.base = self.base.clone();
        }
        if self.sign.is_some() {
            cfg.sign = self.sign.clone();
        }
        if let Some(q) = &self.q {
            cfg.q = Some(Rational::Text(q.clone()));
        }
        if let Some(r) = &self.r {
            cfg.r = Some(Rational::Text(r.clone()));
        }
        if let Some(p) = &self.p {
            cfg.p = Some(PolyInput::Expr(p.clone()));
        }
        if self.family.is_some() {
            cfg.family = self.family.clone();
        }
        if self.n.is_some() {
            cfg.n = self.n;
        }
        if self.bound.is_some() {
            cfg.bound = self.bound;
        }
        Ok(cfg)
    }
}

fn read_config(path: &PathBuf) -> Result<String, CliError> {
    let io = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

/// A validated config.
pub struct Resolved {
    pub spec: AlgebraSpec,
    pub family: Option<HopfFamily>,
    pub bound: u32,
}

impl CliConfig {
    pub fn resolve(&self) -> Result<Resolved, CliError> {
        let bound = self.bound.unwrap_or(DEFAULT_BOUND);
        if let Some(name) = &self.family {
            let family = self.family_of(name)?;
            return Ok(Resolved {
                spec: family.spec(),
                family: Some(family),
                bound,
            });
        }
        if self.n.is_some() {
            return Err(CliError::Config("n applies to --family only".into()));
        }
        let kind = match (self.base.as_deref(), &self.sign) {
            (Some("poly"), _) | (None, None) => BaseKind::Poly,
            (Some("laurent"), _) | (None, Some(_)) => BaseKind::Laurent,
            (Some(other), _) => {
                return Err(CliError::Config(format!(
                    "base must be `poly` or `laurent`, got `{other}`"
                )))
            }
        };
        let q = match &self.q {
            Some(q) => q.value("q")?,
            None => Scalar::one(),
        };
        if q.is_zero() {
            return Err(CliError::Config("q must be nonzero".into()));
        }
        let sigma = match kind {
            BaseKind::Poly => {
                if self.sign.is_some() {
                    return Err(CliError::Config(
                        "sign applies to the laurent base only".into(),
                    ));
                }
                let r = match &self.r {
                    Some(r) => r.value("r")?,
                    None => Scalar::zero(),
                };
                SigmaSpec::affine(q, r)?
            }
            BaseKind::Laurent => {
                if self.r.is_some() {
                    return Err(CliError::Config("r applies to the poly base only".into()));
                }
                match self.sign.as_deref().unwrap_or("+") {
                    "+" | "plus" => SigmaSpec::laurent_plus(q)?,
                    "-" | "minus" | "−" => SigmaSpec::laurent_minus(q)?,
                    other => {
                        return Err(CliError::Config(format!(
                            "sign must be `+` or `-`, got `{other}`"
                        )))
                    }
                }
            }
        };
        let p = match &self.p {
            None => BasePoly::zero(kind),
            Some(input) => parse_p(kind, input)?,
        };
        let spec = AlgebraSpec::new(sigma, p).map_err(|e| CliError::Config(e.to_string()))?;
        Ok(Resolved {
            spec,
            family: None,
            bound,
        })
    }

    fn family_of(&self, name: &str) -> Result<HopfFamily, CliError> {
        if self.base.is_some() || self.sign.is_some() || self.r.is_some() || self.p.is_some() {
            return Err(CliError::Config(
                "family fixes the algebra; drop base, sign, r and p".into(),
            ));
        }
        let n = self.n.unwrap_or(1);
        let family = match name {
            "a" => {
                if self.q.is_some() || self.n.is_some() {
                    return Err(CliError::Config("family a takes neither q nor n".into()));
                }
                HopfFamily::EnvelopingSolvable
            }
            "b" => {
                let q = self
                    .q
                    .as_ref()
                    .ok_or_else(|| CliError::Config("family b needs q".into()))?
                    .value("q")?;
                HopfFamily::quantum_torus(q, n)?
            }
            "c" => {
                if self.q.is_some() {
                    return Err(CliError::Config("family c has q = 1 and takes no q".into()));
                }
                HopfFamily::laurent_derivation(n)?
            }
            other => {
                return Err(CliError::Config(format!(
                    "family must be a, b or c, got `{other}`"
                )))
            }
        };
        Ok(family)
    }
}

/// `p` over the base ring of the given kind.
fn parse_p(kind: BaseKind, input: &PolyInput) -> Result<BasePoly, CliError> {
    match input {
        PolyInput::Terms(terms) => {
            let mut out = Vec::with_capacity(terms.len());
            for (e, c) in terms {
                out.push((*e, c.value("p coefficient")?));
            }
            BasePoly::from_terms(kind, out).map_err(|e| CliError::Config(format!("p: {e}")))
        }
        PolyInput::Expr(text) => {
            let scratch = match kind {
                BaseKind::Poly => {
                    AlgebraSpec::poly(Scalar::one(), Scalar::zero(), BasePoly::zero(kind))
                }
                BaseKind::Laurent => AlgebraSpec::laurent_plus(Scalar::one(), BasePoly::zero(kind)),
            }?;
            let ctx = Context::new(Algebra::new(scratch));
            let e = parse_element(&ctx, text).map_err(|e| CliError::Config(format!("p: {e}")))?;
            e.as_base()
                .ok_or_else(|| CliError::Config(format!("p must not involve y, got `{text}`")))
        }
    }
}
