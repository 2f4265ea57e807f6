use std::fmt::Debug;

/// Coefficient rings for structure constants and cochains.
///
/// Elements carry no context, so every operation goes through the ring value.
pub trait Ring: Clone + Debug + PartialEq {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn characteristic(&self) -> u32;
    fn format(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    /// a += c * b
    fn add_mul_assign(&self, a: &mut Self::Elem, c: &Self::Elem, b: &Self::Elem) {
        if !self.is_zero(c) && !self.is_zero(b) {
            *a = self.add(a, &self.mul(c, b));
        }
    }
}

/// Dense vector helpers over a ring.
pub fn vec_zero<R: Ring>(ring: &R, n: usize) -> Vec<R::Elem> {
    vec![ring.zero(); n]
}

pub fn vec_is_zero<R: Ring>(ring: &R, v: &[R::Elem]) -> bool {
    v.iter().all(|x| ring.is_zero(x))
}

pub fn vec_add_assign<R: Ring>(ring: &R, acc: &mut [R::Elem], v: &[R::Elem]) {
    for (a, b) in acc.iter_mut().zip(v) {
        if !ring.is_zero(b) {
            ring.add_assign(a, b);
        }
    }
}

pub fn vec_scale<R: Ring>(ring: &R, c: &R::Elem, v: &[R::Elem]) -> Vec<R::Elem> {
    v.iter().map(|x| ring.mul(c, x)).collect()
}
