use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::AuditError;

macro_rules! laws {
    ($($id:ident => $name:literal, $tol:expr, $about:literal;)*) => {
        /// A law checked by the auditor.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        #[allow(non_camel_case_types, clippy::upper_case_acronyms)]
        pub enum LawId {
            $($id,)*
        }

        impl LawId {
            pub const ALL: &'static [LawId] = &[$(LawId::$id,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(LawId::$id => $name,)*
                }
            }

            /// Residual tolerance used when a suite row does not set one.
            pub fn default_tol(self) -> f64 {
                match self {
                    $(LawId::$id => $tol,)*
                }
            }

            /// One-line statement of what is checked.
            pub fn statement(self) -> &'static str {
                match self {
                    $(LawId::$id => $about,)*
                }
            }
        }

        impl FromStr for LawId {
            type Err = AuditError;

            fn from_str(s: &str) -> Result<Self, AuditError> {
                match s.trim().to_ascii_uppercase().as_str() {
                    $($name => Ok(LawId::$id),)*
                    other => Err(AuditError::config(None, format!("unknown law `{other}`"))),
                }
            }
        }
    };
}

laws! {
    Sea1 => "SEA1", 1e-8, "a∘(b+c) = a∘b + a∘c for summable b, c";
    Sea2 => "SEA2", 1e-8, "1∘a = a and a∘1 = a";
    Sea3 => "SEA3", 1e-8, "a∘b = 0 implies b∘a = 0";
    Sea4 => "SEA4", 1e-8, "a|b implies a|b⊥ and a∘(b∘c) = (a∘b)∘c";
    Sea5 => "SEA5", 1e-8, "c|a and c|b imply c|a∘b and c|a+b";
    ScalarLinearity => "SCALAR_LINEARITY", 1e-8, "(λa)∘b = a∘(λb) = λ(a∘b)";
    ProductLeLeft => "PRODUCT_LE_LEFT", 1e-8, "a∘b is an effect and a∘b ≤ a";
    MonotoneRight => "MONOTONE_RIGHT", 1e-8, "a ≤ b implies c∘a ≤ c∘b";
    SharpProps => "SHARP_PROPS", 1e-8, "p sharp: p ≤ a gives p∘a = a∘p = p; a ≤ p gives p∘a = a";
    FloorLimit => "FLOOR_LIMIT", 1e-9, "a^(2^k) decreases to ⌊a⌋";
    DyadicBound => "DYADIC_BOUND", 1e-9, "q_(2^m) ≤ q_(2^(m+1)) ≤ a and ‖a − q_(2^m)‖ ≤ 2^(1−m)";
    SpectralRecon => "SPECTRAL_RECON", 1e-9, "Σ λ_i p_i = a with orthogonal idempotents";
    FundamentalEq => "FUNDAMENTAL_EQ", 1e-9, "Q_(Q_a b) = Q_a Q_b Q_a";
    CommuteEquiv => "COMMUTE_EQUIV", 1e-8, "∘-commutation, [Q_a,Q_b], [T_a,T_b] and ab − ba agree";
    SelfDuality => "SELF_DUALITY", 1e-10, "a ≥ 0 iff ⟨a,b⟩ ≥ 0 for all b ≥ 0";
    Homogeneity => "HOMOGENEITY", 1e-8, "L_b L_(a⁻¹) maps a to b and preserves the cone";
    PseudoInverse => "PSEUDO_INVERSE", 1e-8, "b∘b⁻¹ = b⁻¹∘b = ⌈b⌉";
    Divide => "DIVIDE", 1e-8, "q∘(q⁻¹∘a) = a and q⁻¹∘a ≤ ⌈q⌉ for a ≤ q";
    Invariance => "INVARIANCE", 1e-8, "Φ(a∘b) = Φ(a)∘Φ(b) for order isomorphisms Φ";
    Symmetry => "SYMMETRY", 1e-8, "⟨a∘b, c⟩ = ⟨b, a∘c⟩";
    InvertibilityPres => "INVERTIBILITY_PRES", 1e-7, "(a∘b)⁻¹ = a⁻¹∘b⁻¹";
    QuadraticLaw => "QUADRATIC_LAW", 1e-8, "L_((a∘b)²) = L_a L_(b²) L_a";
    ThetaStructure => "THETA_STRUCTURE", 1e-7, "Θ_(a∘b) = Θ_a Θ_b = Θ_b Θ_a and Θ_(a⁻¹) = Θ_a⁻¹";
}

impl LawId {
    /// The five effect-algebra axioms.
    pub const SEA: &'static [LawId] = &[LawId::Sea1, LawId::Sea2, LawId::Sea3, LawId::Sea4, LawId::Sea5];

    /// Laws used by the characterization demos.
    pub const CHARACTERIZING: &'static [LawId] = &[LawId::Invariance, LawId::Symmetry, LawId::InvertibilityPres];

    /// Parses a comma-separated list; `all` selects every law.
    pub fn parse_list(s: &str) -> Result<Vec<LawId>, AuditError> {
        if s.trim().eq_ignore_ascii_case("all") {
            return Ok(Self::ALL.to_vec());
        }
        s.split(',').filter(|p| !p.trim().is_empty()).map(str::parse).collect()
    }
}

impl fmt::Display for LawId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for LawId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for LawId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        assert_eq!(LawId::ALL.len(), 23);
        for &law in LawId::ALL {
            assert_eq!(law.name().parse::<LawId>().unwrap(), law);
        }
        assert_eq!("sea1".parse::<LawId>().unwrap(), LawId::Sea1);
        assert!("SEA6".parse::<LawId>().is_err());
        assert_eq!(LawId::parse_list("all").unwrap().len(), 23);
        assert_eq!(LawId::parse_list("SEA1,SYMMETRY").unwrap(), vec![LawId::Sea1, LawId::Symmetry]);
    }
}
