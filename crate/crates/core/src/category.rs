//! The interface a host category provides to the quotient machinery.
//!
//! Hom-spaces are finite-dimensional subspaces of an ambient coordinate
//! space (the concatenated component matrices of a morphism), so every
//! factorization question becomes a linear system. Hosts supply the
//! structural pieces (hom bases, composition, biproducts, kernels and
//! cokernels, subobjects, extensions); the provided methods build
//! pullbacks, pushouts, split tests and Hom-exactness on top of them.

use std::fmt::Debug;
use std::hash::Hash;

use serde::Serialize;

use crate::error::Result;
use crate::fflinalg::{Field, FpMatrix};

/// A short exact sequence `0 -> X --incl--> Y --proj--> Z -> 0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Ses<M> {
    pub incl: M,
    pub proj: M,
}

impl<M> Ses<M> {
    pub fn new(incl: M, proj: M) -> Self {
        Ses { incl, proj }
    }
}

/// A biproduct `sum = a (+) b` with injections and projections.
#[derive(Clone, Debug)]
pub struct Biproduct<O, M> {
    pub sum: O,
    pub inj: [M; 2],
    pub proj: [M; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `Hom(G, -)` applied to the sequence.
    Covariant,
    /// `Hom(-, G)` applied to the sequence.
    Contravariant,
}

pub trait ExactCategory: Sync {
    type Obj: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;
    type Mor: Clone + Debug + PartialEq + Send + Sync;

    fn field(&self) -> Field;
    fn source<'a>(&self, f: &'a Self::Mor) -> &'a Self::Obj;
    fn target<'a>(&self, f: &'a Self::Mor) -> &'a Self::Obj;
    fn total_dim(&self, x: &Self::Obj) -> usize;
    /// Short label for an object in reports and errors.
    fn describe_obj(&self, x: &Self::Obj) -> String {
        format!("{x:?}")
    }
    fn zero_object(&self) -> Self::Obj;

    /// Basis of `Hom(x, y)` in a deterministic order.
    fn hom_basis(&self, x: &Self::Obj, y: &Self::Obj) -> Vec<Self::Mor>;
    /// Length of the coordinate vector of a morphism `x -> y`.
    fn ambient_dim(&self, x: &Self::Obj, y: &Self::Obj) -> usize;
    fn coords(&self, f: &Self::Mor) -> Vec<u8>;
    fn from_coords(&self, x: &Self::Obj, y: &Self::Obj, v: &[u8]) -> Self::Mor;

    /// `g ∘ f`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor;
    fn identity(&self, x: &Self::Obj) -> Self::Mor;
    fn direct_sum(&self, x: &Self::Obj, y: &Self::Obj) -> Biproduct<Self::Obj, Self::Mor>;
    fn kernel(&self, f: &Self::Mor) -> (Self::Obj, Self::Mor);
    fn cokernel(&self, f: &Self::Mor) -> (Self::Obj, Self::Mor);
    /// Whether `f` is invertible.
    fn is_iso(&self, f: &Self::Mor) -> bool;
    /// Whether the pair is a conflation of the host's exact structure.
    fn is_conflation(&self, s: &Ses<Self::Mor>) -> bool;

    /// One inflation `U -> x` per subobject of `x` whose quotient is again an object.
    fn enumerate_subobjects(&self, x: &Self::Obj, bound: usize) -> Result<Vec<Self::Mor>>;
    /// Conflations `0 -> x -> Y -> z -> 0`, at least one per extension class.
    fn enumerate_extensions(&self, z: &Self::Obj, x: &Self::Obj, bound: usize) -> Result<Vec<Ses<Self::Mor>>>;

    // ---- provided -------------------------------------------------------

    fn zero_mor(&self, x: &Self::Obj, y: &Self::Obj) -> Self::Mor {
        self.from_coords(x, y, &vec![0; self.ambient_dim(x, y)])
    }

    fn is_zero_mor(&self, f: &Self::Mor) -> bool {
        self.coords(f).iter().all(|&v| v == 0)
    }

    fn is_zero_object(&self, x: &Self::Obj) -> bool {
        self.total_dim(x) == 0
    }

    fn add(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor {
        let fld = self.field();
        let v: Vec<u8> = self
            .coords(f)
            .iter()
            .zip(self.coords(g))
            .map(|(&a, b)| fld.add(a, b))
            .collect();
        self.from_coords(self.source(f), self.target(f), &v)
    }

    fn sub(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor {
        let fld = self.field();
        let v: Vec<u8> = self
            .coords(f)
            .iter()
            .zip(self.coords(g))
            .map(|(&a, b)| fld.sub(a, b))
            .collect();
        self.from_coords(self.source(f), self.target(f), &v)
    }

    fn scale(&self, c: u8, f: &Self::Mor) -> Self::Mor {
        let fld = self.field();
        let v: Vec<u8> = self.coords(f).iter().map(|&a| fld.mul(a, c)).collect();
        self.from_coords(self.source(f), self.target(f), &v)
    }

    fn neg(&self, f: &Self::Mor) -> Self::Mor {
        self.scale(self.field().neg(1), f)
    }

    /// `Σ coeffs[i] * basis[i]`, a morphism `x -> y`.
    fn combine(&self, x: &Self::Obj, y: &Self::Obj, basis: &[Self::Mor], coeffs: &[u8]) -> Self::Mor {
        assert_eq!(basis.len(), coeffs.len());
        let fld = self.field();
        let mut acc = vec![0u8; self.ambient_dim(x, y)];
        for (b, &c) in basis.iter().zip(coeffs) {
            if c == 0 {
                continue;
            }
            for (slot, v) in acc.iter_mut().zip(self.coords(b)) {
                *slot = fld.add(*slot, fld.mul(c, v));
            }
        }
        self.from_coords(x, y, &acc)
    }

    /// Matrix whose columns are the coordinate vectors of `mors` (all `x -> y`).
    fn span_matrix(&self, x: &Self::Obj, y: &Self::Obj, mors: &[Self::Mor]) -> FpMatrix {
        let cols: Vec<Vec<u8>> = mors.iter().map(|f| self.coords(f)).collect();
        FpMatrix::from_columns(self.field(), self.ambient_dim(x, y), &cols)
    }

    /// A basis of the span of `mors`, chosen as the leftmost independent subset.
    fn span_basis(&self, x: &Self::Obj, y: &Self::Obj, mors: &[Self::Mor]) -> Vec<Self::Mor> {
        let m = self.span_matrix(x, y, mors);
        m.independent_columns().into_iter().map(|j| mors[j].clone()).collect()
    }

    /// Some `m` with `k ∘ m = g`, where `k: A -> B` and `g: U -> B`.
    fn solve_post(&self, k: &Self::Mor, g: &Self::Mor) -> Option<Self::Mor> {
        let (u, a) = (self.source(g), self.source(k));
        let basis = self.hom_basis(u, a);
        let images: Vec<Self::Mor> = basis.iter().map(|b| self.compose(k, b)).collect();
        let sys = self.span_matrix(u, self.target(k), &images);
        let c = sys.solve_vec(&self.coords(g))?;
        Some(self.combine(u, a, &basis, &c))
    }

    /// Some `m` with `m ∘ c = g`, where `c: A -> B` and `g: A -> C`.
    fn solve_pre(&self, c: &Self::Mor, g: &Self::Mor) -> Option<Self::Mor> {
        let (b, t) = (self.target(c), self.target(g));
        let basis = self.hom_basis(b, t);
        let images: Vec<Self::Mor> = basis.iter().map(|h| self.compose(h, c)).collect();
        let sys = self.span_matrix(self.source(c), t, &images);
        let coeffs = sys.solve_vec(&self.coords(g))?;
        Some(self.combine(b, t, &basis, &coeffs))
    }

    /// `(f g): A (+) B -> Y` for `f: A -> Y`, `g: B -> Y`.
    fn row(&self, bp: &Biproduct<Self::Obj, Self::Mor>, f: &Self::Mor, g: &Self::Mor) -> Self::Mor {
        self.add(&self.compose(f, &bp.proj[0]), &self.compose(g, &bp.proj[1]))
    }

    /// `(f; g): X -> A (+) B` for `f: X -> A`, `g: X -> B`.
    fn column(&self, bp: &Biproduct<Self::Obj, Self::Mor>, f: &Self::Mor, g: &Self::Mor) -> Self::Mor {
        self.add(&self.compose(&bp.inj[0], f), &self.compose(&bp.inj[1], g))
    }

    /// Pullback of `f: X -> Z` and `g: Y -> Z`: `(P, p1: P -> X, p2: P -> Y)`.
    fn pullback(&self, f: &Self::Mor, g: &Self::Mor) -> (Self::Obj, Self::Mor, Self::Mor) {
        let bp = self.direct_sum(self.source(f), self.source(g));
        let diff = self.row(&bp, f, &self.neg(g));
        let (p, k) = self.kernel(&diff);
        let p1 = self.compose(&bp.proj[0], &k);
        let p2 = self.compose(&bp.proj[1], &k);
        (p, p1, p2)
    }

    /// Pushout of `f: X -> Y` and `g: X -> Z`: `(Q, q1: Y -> Q, q2: Z -> Q)`.
    fn pushout(&self, f: &Self::Mor, g: &Self::Mor) -> (Self::Obj, Self::Mor, Self::Mor) {
        let bp = self.direct_sum(self.target(f), self.target(g));
        let diff = self.column(&bp, f, &self.neg(g));
        let (q, c) = self.cokernel(&diff);
        let q1 = self.compose(&c, &bp.inj[0]);
        let q2 = self.compose(&c, &bp.inj[1]);
        (q, q1, q2)
    }

    /// A retraction of the inflation and a section of the deflation, when the sequence splits.
    fn is_split(&self, s: &Ses<Self::Mor>) -> Option<(Self::Mor, Self::Mor)> {
        let x = self.source(&s.incl);
        let z = self.target(&s.proj);
        let retraction = self.solve_pre(&s.incl, &self.identity(x));
        let section = self.solve_post(&s.proj, &self.identity(z));
        assert_eq!(
            retraction.is_some(),
            section.is_some(),
            "retraction and section existence disagree on a conflation"
        );
        retraction.zip(section)
    }

    /// Surjectivity of `Hom(g, Y) -> Hom(g, Z)` (covariant) or `Hom(Y, g) -> Hom(X, g)` (contravariant).
    fn hom_exact(&self, s: &Ses<Self::Mor>, g: &Self::Obj, side: Side) -> bool {
        let (x, y, z) = (self.source(&s.incl), self.target(&s.incl), self.target(&s.proj));
        match side {
            Side::Covariant => {
                let hy = self.hom_basis(g, y);
                let img: Vec<Self::Mor> = hy.iter().map(|b| self.compose(&s.proj, b)).collect();
                debug_assert!({
                    let hx = self.hom_basis(g, x);
                    let inj: Vec<Self::Mor> = hx.iter().map(|b| self.compose(&s.incl, b)).collect();
                    self.span_matrix(g, y, &inj).rank() == hx.len()
                });
                self.span_matrix(g, z, &img).rank() == self.hom_basis(g, z).len()
            }
            Side::Contravariant => {
                let hy = self.hom_basis(y, g);
                let img: Vec<Self::Mor> = hy.iter().map(|b| self.compose(b, &s.incl)).collect();
                debug_assert!({
                    let hz = self.hom_basis(z, g);
                    let inj: Vec<Self::Mor> = hz.iter().map(|b| self.compose(b, &s.proj)).collect();
                    self.span_matrix(y, g, &inj).rank() == hz.len()
                });
                self.span_matrix(x, g, &img).rank() == self.hom_basis(x, g).len()
            }
        }
    }

    /// An isomorphism `x -> y`, found by exhaustive search of `Hom(x, y)` when it
    /// has at most `cap` elements, otherwise by a deterministic pseudo-random scan.
    fn find_iso(&self, x: &Self::Obj, y: &Self::Obj, cap: usize) -> Option<Self::Mor> {
        if self.total_dim(x) != self.total_dim(y) {
            return None;
        }
        let basis = self.hom_basis(x, y);
        crate::enumerate::elements(self.field(), basis.len(), cap, 0x15_0)
            .0
            .into_iter()
            .map(|c| self.combine(x, y, &basis, &c))
            .find(|f| self.is_iso(f))
    }
}

/// A full additive subcategory `P` together with the approximations the
/// quotient construction needs.
pub trait Subcategory<C: ExactCategory>: Sync {
    /// Human-readable description for reports.
    fn describe(&self) -> String;

    /// Whether `x` lies in `P` (closed under sums and summands).
    fn contains(&self, cat: &C, x: &C::Obj) -> bool;

    /// Basis of the morphisms `x -> y` factoring through an object of `P`.
    fn ideal_basis(&self, cat: &C, x: &C::Obj, y: &C::Obj) -> Vec<C::Mor>;

    /// A `P`-precover of `x` (not necessarily epic).
    fn precover(&self, cat: &C, x: &C::Obj) -> C::Mor;

    /// A `P`-preenvelope of `x` (not necessarily monic).
    fn preenvelope(&self, cat: &C, x: &C::Obj) -> C::Mor;

    /// A conflation `0 -> P1 -> P0 -> x -> 0` with precover deflation and `P0, P1` in `P`.
    fn condition_down(&self, cat: &C, x: &C::Obj) -> Option<Ses<C::Mor>>;

    /// A conflation `0 -> x -> Q0 -> Q1 -> 0` with preenvelope inflation and `Q0, Q1` in `P`.
    fn condition_up(&self, cat: &C, x: &C::Obj) -> Option<Ses<C::Mor>>;

    /// `Hom(P, -)`-exactness: the precover of the end term lifts along the deflation.
    fn hom_exact_covariant(&self, cat: &C, s: &Ses<C::Mor>) -> bool {
        let z = cat.target(&s.proj);
        cat.solve_post(&s.proj, &self.precover(cat, z)).is_some()
    }

    /// `Hom(-, P)`-exactness: the preenvelope of the first term extends along the inflation.
    fn hom_exact_contravariant(&self, cat: &C, s: &Ses<C::Mor>) -> bool {
        let x = cat.source(&s.incl);
        cat.solve_pre(&s.incl, &self.preenvelope(cat, x)).is_some()
    }
}
