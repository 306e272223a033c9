use super::{ExactScalar, Ring};

/// A dual number `value + derivative·ε` with `ε² = 0`.
///
/// Running a polynomial kernel on `x + ε·v` gives the directional derivative
/// along `v` in the `derivative` slot, exactly.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Jet {
    pub value: ExactScalar,
    pub derivative: ExactScalar,
}

impl Jet {
    pub fn new(value: ExactScalar, derivative: ExactScalar) -> Self {
        Jet { value, derivative }
    }
}

impl Ring for Jet {
    fn zero() -> Self {
        Jet::default()
    }

    fn one() -> Self {
        Jet::new(ExactScalar::one(), ExactScalar::zero())
    }

    fn is_zero(&self) -> bool {
        self.value.is_zero() && self.derivative.is_zero()
    }

    fn plus(&self, other: &Self) -> Self {
        Jet::new(&self.value + &other.value, &self.derivative + &other.derivative)
    }

    fn minus(&self, other: &Self) -> Self {
        Jet::new(&self.value - &other.value, &self.derivative - &other.derivative)
    }

    fn times(&self, other: &Self) -> Self {
        let d = &self.value * &other.derivative + &self.derivative * &other.value;
        Jet::new(&self.value * &other.value, d)
    }

    fn negated(&self) -> Self {
        Jet::new(-&self.value, -&self.derivative)
    }

    fn constant(c: &ExactScalar) -> Self {
        Jet::new(c.clone(), ExactScalar::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j(a: i64, b: i64) -> Jet {
        Jet::new(ExactScalar::from_int(a), ExactScalar::from_int(b))
    }

    #[test]
    fn dual_number_product() {
        // (2 + 3ε)(5 + 7ε) = 10 + 29ε
        assert_eq!(j(2, 3).times(&j(5, 7)), j(10, 29));
    }

    #[test]
    fn cube_derivative() {
        // d/dt t³ at t = 4 is 48.
        let t = j(4, 1);
        assert_eq!(t.times(&t).times(&t), j(64, 48));
    }
}
