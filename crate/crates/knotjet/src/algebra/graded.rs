//! Scalars carrying a formal power of the period `2ϖ_A`.

use super::ring::Ring;

#[derive(Clone, Debug, PartialEq)]
pub struct Graded<E> {
    pub value: E,
    /// exponent of (2ϖ_A)
    pub grade: i32,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("cannot add grade {0} to grade {1}")]
pub struct GradeMismatch(pub i32, pub i32);

impl<E: Clone + PartialEq> Graded<E> {
    pub fn new(value: E, grade: i32) -> Self {
        Graded { value, grade }
    }

    pub fn add<R: Ring<Elem = E>>(&self, r: &R, o: &Self) -> Result<Self, GradeMismatch> {
        // zero is homogeneous of every grade
        if r.is_zero(&o.value) {
            return Ok(self.clone());
        }
        if r.is_zero(&self.value) {
            return Ok(o.clone());
        }
        if self.grade != o.grade {
            return Err(GradeMismatch(self.grade, o.grade));
        }
        Ok(Graded::new(r.add(&self.value, &o.value), self.grade))
    }

    pub fn mul<R: Ring<Elem = E>>(&self, r: &R, o: &Self) -> Self {
        Graded::new(r.mul(&self.value, &o.value), self.grade + o.grade)
    }

    pub fn scale<R: Ring<Elem = E>>(&self, r: &R, c: &E) -> Self {
        Graded::new(r.mul(&self.value, c), self.grade)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::{qi, QQ};

    #[test]
    fn grades_add_and_multiply() {
        let a = Graded::new(qi(2), -2);
        let b = Graded::new(qi(3), 2);
        assert_eq!(a.mul(&QQ, &b), Graded::new(qi(6), 0));
        assert_eq!(a.add(&QQ, &b), Err(GradeMismatch(-2, 2)));
        assert_eq!(a.add(&QQ, &Graded::new(qi(0), 7)).unwrap(), a);
    }
}
