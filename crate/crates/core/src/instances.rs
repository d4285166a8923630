//! Small named instances: the quivers `A2` and `A3` over `F_2` and their indecomposables.

use crate::category::ExactCategory;
use crate::fflinalg::{Field, FpMatrix};
use crate::repcat::{Quiver, RepCategory, RepMor, RepObj, SES};

/// `1 -> 2` over `F_2`.
pub struct A2 {
    pub cat: RepCategory,
    pub s1: RepObj,
    pub s2: RepObj,
    pub p1: RepObj,
    /// `S2 -> P1`.
    pub iota: RepMor,
    /// `P1 -> S1`.
    pub pi: RepMor,
    /// `0 -> S2 -> P1 -> S1 -> 0`.
    pub ses: SES,
}

impl A2 {
    pub fn indecomposables(&self) -> Vec<RepObj> {
        vec![self.s1.clone(), self.s2.clone(), self.p1.clone()]
    }

    pub fn named(&self) -> Vec<(&'static str, RepObj)> {
        vec![("S1", self.s1.clone()), ("S2", self.s2.clone()), ("P1", self.p1.clone())]
    }
}

pub fn a2() -> A2 {
    a2_over(Field::default())
}

pub fn a2_over(field: Field) -> A2 {
    let cat = RepCategory::new(Quiver::linear(2), field);
    let s1 = cat.simple(0);
    let s2 = cat.simple(1);
    let p1 = cat.object_from_ints(&[1, 1], &[vec![vec![1]]]).unwrap();
    let one = |r, c| FpMatrix::identity(field, 1).block(0, r, 0, c);
    let iota = cat
        .morphism(&s2, &p1, vec![FpMatrix::zeros(field, 1, 0), one(1, 1)])
        .unwrap();
    let pi = cat
        .morphism(&p1, &s1, vec![one(1, 1), FpMatrix::zeros(field, 0, 1)])
        .unwrap();
    let ses = cat.ses(iota.clone(), pi.clone()).unwrap();
    A2 {
        cat,
        s1,
        s2,
        p1,
        iota,
        pi,
        ses,
    }
}

/// `1 -> 2 -> 3` over `F_2`.
pub struct A3 {
    pub cat: RepCategory,
    pub s1: RepObj,
    pub s2: RepObj,
    pub s3: RepObj,
    pub p1: RepObj,
    pub p2: RepObj,
    pub i2: RepObj,
}

impl A3 {
    /// The six indecomposables, in the order `P1, P2, S3, S1, I2, S2`.
    pub fn indecomposables(&self) -> Vec<RepObj> {
        self.named().into_iter().map(|(_, o)| o).collect()
    }

    pub fn named(&self) -> Vec<(&'static str, RepObj)> {
        vec![
            ("P1", self.p1.clone()),
            ("P2", self.p2.clone()),
            ("S3", self.s3.clone()),
            ("S1", self.s1.clone()),
            ("I2", self.i2.clone()),
            ("S2", self.s2.clone()),
        ]
    }

    /// Generators of the subcategory containing every indecomposable except `S2`.
    pub fn generators(&self) -> Vec<RepObj> {
        let mut g = self.indecomposables();
        g.pop();
        g
    }

    /// `0 -> P2 -> P1 -> S1 -> 0`.
    pub fn ext_p2_s1(&self) -> SES {
        self.inclusion_sequence(&self.p2, &self.p1)
    }

    /// `0 -> S3 -> P1 -> I2 -> 0`.
    pub fn ext_s3_i2(&self) -> SES {
        self.inclusion_sequence(&self.s3, &self.p1)
    }

    /// The sequence `0 -> u -> x -> x/u -> 0` for `u` embedded in `x` as the
    /// top coordinates at every vertex (valid for the uniserial objects here).
    fn inclusion_sequence(&self, u: &RepObj, x: &RepObj) -> SES {
        let c = &self.cat;
        let f = c.field();
        let comps = (0..3)
            .map(|v| {
                let mut m = FpMatrix::zeros(f, x.dim(v), u.dim(v));
                for i in 0..u.dim(v) {
                    m.set(i, i, 1);
                }
                m
            })
            .collect();
        let incl = c.morphism(u, x, comps).unwrap();
        let (_, proj) = c.cokernel(&incl);
        c.ses(incl, proj).unwrap()
    }
}

pub fn a3() -> A3 {
    let cat = RepCategory::new(Quiver::linear(3), Field::default());
    let id = vec![vec![1]];
    let none: Vec<Vec<i64>> = vec![];
    let s1 = cat.simple(0);
    let s2 = cat.simple(1);
    let s3 = cat.simple(2);
    let p1 = cat.object_from_ints(&[1, 1, 1], &[id.clone(), id.clone()]).unwrap();
    let p2 = cat.object_from_ints(&[0, 1, 1], &[none.clone(), id.clone()]).unwrap();
    let i2 = cat.object_from_ints(&[1, 1, 0], &[id, none]).unwrap();
    A3 {
        cat,
        s1,
        s2,
        s3,
        p1,
        p2,
        i2,
    }
}
