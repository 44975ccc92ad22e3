use alloc::format;
use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use crate::codes::Distance;
use crate::{Error, Rational, Result};

macro_rules! statements {
    ($($variant:ident => $id:literal, $doc:literal;)*) => {
        /// A checkable statement about one of the constructions.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum Statement {
            $(#[doc = $doc] $variant,)*
        }

        impl Statement {
            pub const ALL: &'static [Statement] = &[$(Statement::$variant),*];

            pub fn id(self) -> &'static str {
                match self {
                    $(Statement::$variant => $id,)*
                }
            }

            pub fn summary(self) -> &'static str {
                match self {
                    $(Statement::$variant => $doc,)*
                }
            }
        }

        impl FromStr for Statement {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($id => Ok(Statement::$variant),)*
                    other => Err(Error::BadParameter(format!("unknown statement {other:?}"))),
                }
            }
        }
    };
}

statements! {
    DupSoundness => "dup-soundness", "ker([H,H]) has soundness exactly twice that of ker(H)";
    DupCssParams => "dup-css-params", "css([H,H],[H,H]) has parameters [[2n, 2k, 2]]";
    CpDualTensor => "cp-dual-tensor", "ker(H1 (x) H2) equals C1 (x) F^n2 + F^n1 (x) C2";
    CpDimension => "cp-dimension", "ker(H1 (x) H2) has dimension n1 n2 - (n1 - k1)(n2 - k2)";
    CpDistance => "cp-distance", "ker(H1 (x) H2) has distance min(d1, d2)";
    QcpDistance => "qcp-distance", "Q * C has distance min(d(C), d(ker H_X), d(ker H_Z))";
    StdSoundness => "std-soundness", "standard-form checks give soundness at least n/m";
    StdCss => "std-css", "standardised CSS checks give soundness at least min(n/m_X, n/m_Z)";
    CpLtcSoundness => "cp-ltc-soundness", "standard H1 gives ker(H1 (x) H2) soundness at least rho(C2) n1/m1";
    CpQltcSoundness => "cp-qltc-soundness", "standard Q * C has soundness at least rho min(n_q/m_X, n_q/m_Z)";
    CpQltcDistance => "cp-qltc-distance", "standard Q * C has distance min(d, d(C_X), d(C_Z))";
    CpQltcLocality => "cp-qltc-locality", "standard Q * C has locality at most w n_q";
    CpQltcDimension => "cp-qltc-dimension", "standard Q * C has dimension n n_q - (n - k)(n_q - k_q)";
    NestedRate => "nested-rate", "random nested CSS codes have k = n/2";
    BalancedQubits => "balanced-qubits", "the balanced code has 2n l + m(l - 1) qubits";
    BalancedDimension => "balanced-dimension", "the balanced code keeps dimension k";
    BalancedDx => "balanced-dx", "the balanced code has d_x = l d_x(Q')";
    BalancedDz => "balanced-dz", "the balanced code has d_z = d_z(Q')";
    BalancedLocality => "balanced-locality", "exactly m X-checks and 2n qubits grow with l; the rest stay light";
    BalancedSoundnessZ => "balanced-soundness-z", "the X-check side of the star balanced code has soundness at least rho/8";
    BalancedSoundnessX => "balanced-soundness-x", "the Z-check side of the star balanced code has soundness at least 1/3";
    BalancedDistance => "balanced-distance", "the balanced code has distance min(d, 2l)";
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// How the measured value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Exhaustive,
    Rank,
    Enumeration,
    Sampled,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Exhaustive => "exhaustive",
            Method::Rank => "rank",
            Method::Enumeration => "enumeration",
            Method::Sampled => "sampled",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(Method::Exhaustive),
            "rank" => Ok(Method::Rank),
            "enumeration" => Ok(Method::Enumeration),
            "sampled" => Ok(Method::Sampled),
            other => Err(Error::BadParameter(format!("unknown method {other:?}"))),
        }
    }
}

/// A reported value. Ratios always render as `p/q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Quantity {
    Count(usize),
    Ratio(Rational),
    Distance(Distance),
    Params { n: usize, k: usize, d: Distance },
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Count(c) => write!(f, "{c}"),
            Quantity::Ratio(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Quantity::Distance(d) => write!(f, "{d}"),
            Quantity::Params { n, k, d } => write!(f, "[[{n},{k},{d}]]"),
        }
    }
}

/// How `measured` must relate to `predicted` for a pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Equal,
    AtLeast,
    AtMost,
}

impl Relation {
    pub fn holds<T: Ord>(self, measured: &T, predicted: &T) -> bool {
        match self {
            Relation::Equal => measured == predicted,
            Relation::AtLeast => measured >= predicted,
            Relation::AtMost => measured <= predicted,
        }
    }
}

/// Outcome of checking one statement on one instance.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VerificationReport {
    pub statement: Statement,
    pub instance: String,
    pub predicted: Quantity,
    pub measured: Quantity,
    pub pass: bool,
    pub method: Method,
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}: predicted {} measured {} ({})",
            if self.pass { "PASS" } else { "FAIL" },
            self.statement,
            self.instance,
            self.predicted,
            self.measured,
            self.method
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn statement_ids_round_trip() {
        assert_eq!(Statement::ALL.len(), 22);
        for &s in Statement::ALL {
            assert_eq!(s.id().parse::<Statement>().unwrap(), s);
        }
        assert!("nope".parse::<Statement>().is_err());
    }

    #[test]
    fn quantities_render() {
        assert_eq!(Quantity::Ratio(Rational::from_integer(3)).to_string(), "3/1");
        assert_eq!(Quantity::Ratio(Rational::new(6, 4)).to_string(), "3/2");
        assert_eq!(Quantity::Distance(Distance::Infinite).to_string(), "inf");
        let p = Quantity::Params {
            n: 6,
            k: 2,
            d: Distance::Finite(2),
        };
        assert_eq!(p.to_string(), "[[6,2,2]]");
    }

    #[test]
    fn relations() {
        assert!(Relation::AtLeast.holds(&3, &2));
        assert!(!Relation::AtMost.holds(&3, &2));
        assert!(Relation::Equal.holds(&Distance::Infinite, &Distance::Infinite));
    }
}
