use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which Euclidean Jordan algebra an element lives in.
///
/// Serialized as a tagged object, e.g. `{"kind": "complex_hermitian", "n": 3}`;
/// the compact shorthand `real:n | complex:n | quat:n | spin:d | sum(a,b,...)`
/// is available through [`FromStr`] and [`fmt::Display`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", try_from = "RawDescriptor")]
pub enum AlgebraDescriptor {
    RealSymmetric { n: usize },
    ComplexHermitian { n: usize },
    /// Quaternionic Hermitian `n × n` matrices, realized as `2n × 2n` complex
    /// Hermitian matrices commuting with the quaternionic structure.
    QuaternionicHermitian { n: usize },
    /// `R^d ⊕ R` with `(v,t)*(w,s) = (sv + tw, ⟨v,w⟩ + ts)`.
    SpinFactor { d: usize },
    DirectSum { summands: Vec<AlgebraDescriptor> },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum RawDescriptor {
    RealSymmetric { n: usize },
    ComplexHermitian { n: usize },
    QuaternionicHermitian { n: usize },
    SpinFactor { d: usize },
    DirectSum { summands: Vec<AlgebraDescriptor> },
}

impl TryFrom<RawDescriptor> for AlgebraDescriptor {
    type Error = Error;

    fn try_from(raw: RawDescriptor) -> Result<Self> {
        let desc = match raw {
            RawDescriptor::RealSymmetric { n } => AlgebraDescriptor::RealSymmetric { n },
            RawDescriptor::ComplexHermitian { n } => AlgebraDescriptor::ComplexHermitian { n },
            RawDescriptor::QuaternionicHermitian { n } => AlgebraDescriptor::QuaternionicHermitian { n },
            RawDescriptor::SpinFactor { d } => AlgebraDescriptor::SpinFactor { d },
            RawDescriptor::DirectSum { summands } => AlgebraDescriptor::DirectSum { summands },
        };
        desc.validate()?;
        Ok(desc)
    }
}

impl AlgebraDescriptor {
    /// # Panics
    /// If `n == 0`.
    pub fn real(n: usize) -> Self {
        assert!(n >= 1, "matrix order must be at least 1");
        AlgebraDescriptor::RealSymmetric { n }
    }

    /// # Panics
    /// If `n == 0`.
    pub fn complex(n: usize) -> Self {
        assert!(n >= 1, "matrix order must be at least 1");
        AlgebraDescriptor::ComplexHermitian { n }
    }

    /// # Panics
    /// If `n == 0`.
    pub fn quaternionic(n: usize) -> Self {
        assert!(n >= 1, "matrix order must be at least 1");
        AlgebraDescriptor::QuaternionicHermitian { n }
    }

    /// # Panics
    /// If `d == 0`.
    pub fn spin(d: usize) -> Self {
        assert!(d >= 1, "spin factor rank must be at least 1");
        AlgebraDescriptor::SpinFactor { d }
    }

    /// # Panics
    /// If `summands` is empty.
    pub fn direct_sum(summands: Vec<AlgebraDescriptor>) -> Self {
        assert!(!summands.is_empty(), "direct sum needs at least one summand");
        AlgebraDescriptor::DirectSum { summands }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            AlgebraDescriptor::RealSymmetric { n }
            | AlgebraDescriptor::ComplexHermitian { n }
            | AlgebraDescriptor::QuaternionicHermitian { n } => {
                if *n == 0 {
                    return Err(Error::InvalidDescriptor(format!("{self}: n must be ≥ 1")));
                }
            }
            AlgebraDescriptor::SpinFactor { d } => {
                if *d == 0 {
                    return Err(Error::InvalidDescriptor(format!("{self}: d must be ≥ 1")));
                }
            }
            AlgebraDescriptor::DirectSum { summands } => {
                if summands.is_empty() {
                    return Err(Error::InvalidDescriptor("empty direct sum".into()));
                }
                for s in summands {
                    s.validate()?;
                }
            }
        }
        Ok(())
    }

    /// Dimension of the algebra as a real vector space.
    pub fn real_dimension(&self) -> usize {
        match self {
            AlgebraDescriptor::RealSymmetric { n } => n * (n + 1) / 2,
            AlgebraDescriptor::ComplexHermitian { n } => n * n,
            AlgebraDescriptor::QuaternionicHermitian { n } => n * (2 * n - 1),
            AlgebraDescriptor::SpinFactor { d } => d + 1,
            AlgebraDescriptor::DirectSum { summands } => summands.iter().map(Self::real_dimension).sum(),
        }
    }

    /// Jordan rank: the number of idempotents in a Jordan frame.
    pub fn rank(&self) -> usize {
        match self {
            AlgebraDescriptor::RealSymmetric { n }
            | AlgebraDescriptor::ComplexHermitian { n }
            | AlgebraDescriptor::QuaternionicHermitian { n } => *n,
            AlgebraDescriptor::SpinFactor { .. } => 2,
            AlgebraDescriptor::DirectSum { summands } => summands.iter().map(Self::rank).sum(),
        }
    }

    /// Order of the complex matrix storing an element, if this is a matrix kind.
    pub fn matrix_order(&self) -> Option<usize> {
        match self {
            AlgebraDescriptor::RealSymmetric { n } | AlgebraDescriptor::ComplexHermitian { n } => Some(*n),
            AlgebraDescriptor::QuaternionicHermitian { n } => Some(2 * n),
            _ => None,
        }
    }

    pub fn is_matrix_kind(&self) -> bool {
        self.matrix_order().is_some()
    }

    /// True for complex Hermitian algebras and direct sums built only from them.
    pub fn is_complex_only(&self) -> bool {
        match self {
            AlgebraDescriptor::ComplexHermitian { .. } => true,
            AlgebraDescriptor::DirectSum { summands } => summands.iter().all(Self::is_complex_only),
            _ => false,
        }
    }

    /// True when every summand (recursively) is a matrix kind.
    pub fn is_matrix_only(&self) -> bool {
        match self {
            AlgebraDescriptor::DirectSum { summands } => summands.iter().all(Self::is_matrix_only),
            other => other.is_matrix_kind(),
        }
    }
}

impl fmt::Display for AlgebraDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraDescriptor::RealSymmetric { n } => write!(f, "real:{n}"),
            AlgebraDescriptor::ComplexHermitian { n } => write!(f, "complex:{n}"),
            AlgebraDescriptor::QuaternionicHermitian { n } => write!(f, "quat:{n}"),
            AlgebraDescriptor::SpinFactor { d } => write!(f, "spin:{d}"),
            AlgebraDescriptor::DirectSum { summands } => {
                write!(f, "sum(")?;
                for (i, s) in summands.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{s}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl FromStr for AlgebraDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (desc, rest) = parse_descriptor(&compact)?;
        if !rest.is_empty() {
            return Err(Error::Parse(format!("trailing input `{rest}` in algebra `{s}`")));
        }
        desc.validate()?;
        Ok(desc)
    }
}

fn parse_descriptor(s: &str) -> Result<(AlgebraDescriptor, &str)> {
    if let Some(mut rest) = s.strip_prefix("sum(") {
        let mut summands = Vec::new();
        loop {
            let (d, r) = parse_descriptor(rest)?;
            summands.push(d);
            if let Some(r) = r.strip_prefix(',') {
                rest = r;
            } else if let Some(r) = r.strip_prefix(')') {
                return Ok((AlgebraDescriptor::DirectSum { summands }, r));
            } else {
                return Err(Error::Parse(format!("expected `,` or `)` before `{r}`")));
            }
        }
    }
    let (name, rest) = s
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("expected `<kind>:<size>` in `{s}`")))?;
    let digits = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
    let (num, rest) = rest.split_at(digits);
    let size: usize = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad size `{num}` for `{name}`")))?;
    let desc = match name {
        "real" => AlgebraDescriptor::RealSymmetric { n: size },
        "complex" => AlgebraDescriptor::ComplexHermitian { n: size },
        "quat" => AlgebraDescriptor::QuaternionicHermitian { n: size },
        "spin" => AlgebraDescriptor::SpinFactor { d: size },
        other => return Err(Error::Parse(format!("unknown algebra kind `{other}`"))),
    };
    Ok((desc, rest))
}
