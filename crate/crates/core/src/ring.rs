use std::fmt::Debug;
use std::hash::Hash;

use crate::field::Field;

/// A finite-dimensional algebra over a field, equipped with an involution.
///
/// Implemented by [`InvolutiveAlgebra`](crate::algebra::InvolutiveAlgebra) for
/// exact general-purpose work and by [`FiniteAlgebra`](crate::coded::FiniteAlgebra)
/// for table-driven exhaustive searches.
pub trait InvolutiveRing: Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;
    type Base: Field;

    fn base(&self) -> &Self::Base;
    /// Dimension over the base field.
    fn dim(&self) -> usize;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// The involution.
    fn conj(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Coordinates over the base field.
    fn coords(&self, a: &Self::Elem) -> Vec<<Self::Base as Field>::Elem>;
    fn from_coords(&self, c: &[<Self::Base as Field>::Elem]) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    /// `k * 1`.
    fn scalar(&self, k: &<Self::Base as Field>::Elem) -> Self::Elem {
        let base = self.base();
        let c: Vec<_> = self.coords(&self.one()).iter().map(|u| base.mul(k, u)).collect();
        self.from_coords(&c)
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        let k = self.base().from_int(n);
        self.scalar(&k)
    }
}
