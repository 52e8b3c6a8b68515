use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use super::scalar::Scalar;

/// A nonnegative real extended with a dedicated `+∞` sentinel.
///
/// `+∞` compares strictly greater than every finite value and arithmetic
/// saturates: `∞ + x = ∞`, `c·∞ = ∞` for `c > 0`. It is never encoded as a
/// large float, so distances to empty sets cannot be confused with genuine
/// finite values.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtReal<T> {
    Finite(T),
    Inf,
}

impl<T: Scalar> ExtReal<T> {
    pub fn finite(v: T) -> Self {
        ExtReal::Finite(v)
    }

    pub fn zero() -> Self {
        ExtReal::Finite(T::zero())
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, ExtReal::Inf)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    /// Finite value, if any.
    pub fn value(&self) -> Option<T> {
        match self {
            ExtReal::Finite(v) => Some(*v),
            ExtReal::Inf => None,
        }
    }

    /// Finite value or panic; for contexts where finiteness was checked.
    pub fn expect_finite(&self) -> T {
        self.value().expect("ExtReal is +inf")
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Saturating scalar multiple; `c` must be positive.
    pub fn scale(self, c: T) -> Self {
        match self {
            ExtReal::Finite(v) => ExtReal::Finite(v * c),
            ExtReal::Inf => ExtReal::Inf,
        }
    }

    /// Ratio `self / other` with the saturating conventions
    /// `∞ / finite = ∞` and `finite / ∞ = 0`; `∞ / ∞` is undefined and
    /// returns `None`.
    pub fn ratio(self, other: Self) -> Option<ExtReal<T>> {
        match (self, other) {
            (ExtReal::Inf, ExtReal::Inf) => None,
            (ExtReal::Inf, ExtReal::Finite(_)) => Some(ExtReal::Inf),
            (ExtReal::Finite(_), ExtReal::Inf) => Some(ExtReal::Finite(T::zero())),
            (ExtReal::Finite(a), ExtReal::Finite(b)) => Some(ExtReal::Finite(a / b)),
        }
    }

    /// Minimum over an iterator; `+∞` on an empty iterator (the `d(x,∅)=∞`
    /// convention).
    pub fn min_over(iter: impl Iterator<Item = T>) -> Self {
        let mut best = ExtReal::Inf;
        for v in iter {
            if ExtReal::Finite(v) < best {
                best = ExtReal::Finite(v);
            }
        }
        best
    }
}

impl<T: Scalar> PartialOrd for ExtReal<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (ExtReal::Inf, ExtReal::Inf) => Some(Ordering::Equal),
            (ExtReal::Inf, ExtReal::Finite(_)) => Some(Ordering::Greater),
            (ExtReal::Finite(_), ExtReal::Inf) => Some(Ordering::Less),
            (ExtReal::Finite(a), ExtReal::Finite(b)) => a.partial_cmp(b),
        }
    }
}

impl<T: Scalar> Add for ExtReal<T> {
    type Output = ExtReal<T>;

    fn add(self, rhs: Self) -> Self::Output {
        match (self, rhs) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::Finite(a + b),
            _ => ExtReal::Inf,
        }
    }
}

impl<T: Scalar> fmt::Display for ExtReal<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Finite(v) => write!(f, "{v}"),
            ExtReal::Inf => write!(f, "inf"),
        }
    }
}

impl<T: Scalar + Serialize> Serialize for ExtReal<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtReal::Finite(v) => v.serialize(serializer),
            ExtReal::Inf => serializer.serialize_str("inf"),
        }
    }
}

impl<'de, T: Scalar> Deserialize<'de> for ExtReal<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V<T>(std::marker::PhantomData<T>);

        impl<'de, T: Scalar> Visitor<'de> for V<T> {
            type Value = ExtReal<T>;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a nonnegative number or the string \"inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<ExtReal<T>, E> {
                Ok(ExtReal::Finite(T::of(v)))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExtReal<T>, E> {
                Ok(ExtReal::Finite(T::of(v as f64)))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExtReal<T>, E> {
                Ok(ExtReal::Finite(T::of(v as f64)))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<ExtReal<T>, E> {
                if v == "inf" {
                    Ok(ExtReal::Inf)
                } else {
                    Err(E::custom(format!("expected \"inf\", got {v:?}")))
                }
            }
        }

        deserializer.deserialize_any(V(std::marker::PhantomData))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inf_is_greater_than_every_finite_value() {
        assert!(ExtReal::Inf > ExtReal::Finite(1e300_f64));
        assert!(ExtReal::Finite(0.0_f64) < ExtReal::Inf);
        assert_eq!(ExtReal::<f64>::Inf, ExtReal::Inf);
    }

    #[test]
    fn arithmetic_saturates() {
        let inf = ExtReal::<f64>::Inf;
        assert_eq!(inf + ExtReal::Finite(2.0), ExtReal::Inf);
        assert_eq!(inf.scale(0.5), ExtReal::Inf);
        assert_eq!(ExtReal::Finite(2.0) + ExtReal::Finite(3.0), ExtReal::Finite(5.0));
    }

    #[test]
    fn min_over_empty_is_inf() {
        assert_eq!(ExtReal::<f64>::min_over(std::iter::empty()), ExtReal::Inf);
    }

    #[test]
    fn serde_round_trip() {
        let v: ExtReal<f64> = ExtReal::Finite(1.5);
        assert_eq!(serde_json::to_string(&v).unwrap(), "1.5");
        let inf: ExtReal<f64> = serde_json::from_str("\"inf\"").unwrap();
        assert!(inf.is_inf());
    }
}
