use serde::{Deserialize, Serialize};

use super::scalar::Scalar;

/// Per-space norm choice. Product spaces always combine component distances
/// additively; this enum only selects the norm inside one space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum NormSpec {
    #[default]
    Max,
    Sum,
    Euclid,
}

impl NormSpec {
    pub fn norm<T: Scalar>(self, v: &[T]) -> T {
        match self {
            NormSpec::Max => v.iter().fold(T::zero(), |m, &c| m.max(c.abs())),
            NormSpec::Sum => v.iter().fold(T::zero(), |s, &c| s + c.abs()),
            NormSpec::Euclid => v.iter().fold(T::zero(), |s, &c| s + c * c).sqrt(),
        }
    }

    pub fn dist<T: Scalar>(self, a: &[T], b: &[T]) -> T {
        debug_assert_eq!(a.len(), b.len());
        match self {
            NormSpec::Max => a
                .iter()
                .zip(b)
                .fold(T::zero(), |m, (&x, &y)| m.max((x - y).abs())),
            NormSpec::Sum => a
                .iter()
                .zip(b)
                .fold(T::zero(), |s, (&x, &y)| s + (x - y).abs()),
            NormSpec::Euclid => a
                .iter()
                .zip(b)
                .fold(T::zero(), |s, (&x, &y)| s + (x - y) * (x - y))
                .sqrt(),
        }
    }

    /// Dual norm (used for hyperplane distances): max ↔ sum, euclid ↔ euclid.
    pub fn dual(self) -> NormSpec {
        match self {
            NormSpec::Max => NormSpec::Sum,
            NormSpec::Sum => NormSpec::Max,
            NormSpec::Euclid => NormSpec::Euclid,
        }
    }
}

/// Additive product-space distance over component pairs, per the fixed
/// convention for product spaces.
pub fn product_dist<T: Scalar>(parts: &[(NormSpec, &[T], &[T])]) -> T {
    parts
        .iter()
        .fold(T::zero(), |s, (n, a, b)| s + n.dist(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norms_on_a_simple_vector() {
        let v = [3.0_f64, -4.0];
        assert_eq!(NormSpec::Max.norm(&v), 4.0);
        assert_eq!(NormSpec::Sum.norm(&v), 7.0);
        assert_eq!(NormSpec::Euclid.norm(&v), 5.0);
    }

    #[test]
    fn product_distance_is_additive() {
        let d = product_dist(&[
            (NormSpec::Max, &[0.0_f64][..], &[1.0][..]),
            (NormSpec::Max, &[0.0][..], &[1.0][..]),
        ]);
        assert_eq!(d, 2.0);
    }

    #[test]
    fn serde_names() {
        assert_eq!(serde_json::to_string(&NormSpec::Euclid).unwrap(), "\"euclid\"");
        let n: NormSpec = serde_json::from_str("\"sum\"").unwrap();
        assert_eq!(n, NormSpec::Sum);
    }
}
