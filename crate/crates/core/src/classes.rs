//! The conflation classes `S` and `T` and the abelianness criterion built on them.
//!
//! A conflation `0 -> S1 -> S2 -> S3 -> 0` lies in `S` when some subobject
//! `U` of `S1` makes the column `0 -> U -> S2 -> S2/U -> 0` exact under
//! `Hom(P, -)` and the row `0 -> S1/U -> S2/U -> S3 -> 0` exact under
//! `Hom(-, P)`. The subobject `U` determines the whole diagram (both `M1` and
//! `M2` are quotients by `U`), so running over every subobject of `S1`
//! decides membership; subobjects of a finite-dimensional representation
//! over a finite field are finitely many. `T` is dual, running over
//! subobjects `N3` of `S3`.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::approx::{is_pseudo_cluster_tilting, sum_many, AddSubcat};
use crate::category::{ExactCategory, Ses, Subcategory};
use crate::error::Result;
use crate::quotient::{Quotient, SweepReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClassKind {
    S,
    T,
}

/// The diagram exhibiting membership.
#[derive(Clone, Debug, Serialize)]
pub struct ClassWitness<M> {
    pub kind: ClassKind,
    /// `U -> S1` for `S`, `T3 -> V` for `T`.
    pub split_off: M,
    pub column: Ses<M>,
    pub row: Ses<M>,
}

/// One candidate of the search and which half of the diagram condition held.
#[derive(Clone, Debug, Serialize)]
pub struct TraceEntry {
    pub index: usize,
    /// Total dimension of `U` (for `S`) or of `N3` (for `T`).
    pub dim: usize,
    pub column_exact: bool,
    pub row_exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassReport<M> {
    pub witness: Option<ClassWitness<M>>,
    pub candidates: usize,
    pub trace: Vec<TraceEntry>,
}

impl<M> ClassReport<M> {
    pub fn member(&self) -> bool {
        self.witness.is_some()
    }
}

impl<M: Clone + PartialEq> ClassWitness<M> {
    /// Re-checks the diagram: both sequences are conflations, the squares
    /// commute, and the exactness requirements hold.
    pub fn validate<C, S>(&self, cat: &C, sub: &S, s: &Ses<M>) -> bool
    where
        C: ExactCategory<Mor = M>,
        S: Subcategory<C>,
    {
        if !cat.is_conflation(&self.column) || !cat.is_conflation(&self.row) {
            return false;
        }
        match self.kind {
            ClassKind::S => {
                cat.compose(&s.incl, &self.split_off) == self.column.incl
                    && cat.compose(&self.row.proj, &self.column.proj) == s.proj
                    && sub.hom_exact_covariant(cat, &self.column)
                    && sub.hom_exact_contravariant(cat, &self.row)
            }
            ClassKind::T => {
                cat.compose(&self.split_off, &s.proj) == self.column.proj
                    && cat.compose(&self.column.incl, &self.row.incl) == s.incl
                    && sub.hom_exact_contravariant(cat, &self.column)
                    && sub.hom_exact_covariant(cat, &self.row)
            }
        }
    }
}

/// Decides membership in `S` by running over every subobject of `S1`.
pub fn in_class_s<C: ExactCategory, S: Subcategory<C>>(
    cat: &C,
    sub: &S,
    s: &Ses<C::Mor>,
    bound: usize,
) -> Result<ClassReport<C::Mor>> {
    let subs = cat.enumerate_subobjects(cat.source(&s.incl), bound)?;
    let results: Vec<(TraceEntry, Option<ClassWitness<C::Mor>>)> = subs
        .par_iter()
        .enumerate()
        .map(|(index, u)| {
            let iu = cat.compose(&s.incl, u);
            let (_, c1) = cat.cokernel(u);
            let (_, c2) = cat.cokernel(&iu);
            let m = cat
                .solve_pre(&c1, &cat.compose(&c2, &s.incl))
                .expect("induced map on quotients");
            let q = cat.solve_pre(&c2, &s.proj).expect("U is killed by the deflation");
            let column = Ses::new(iu, c2);
            let row = Ses::new(m, q);
            let column_exact = sub.hom_exact_covariant(cat, &column);
            let row_exact = sub.hom_exact_contravariant(cat, &row);
            let entry = TraceEntry {
                index,
                dim: cat.total_dim(cat.source(u)),
                column_exact,
                row_exact,
            };
            let w = (column_exact && row_exact).then(|| ClassWitness {
                kind: ClassKind::S,
                split_off: u.clone(),
                column,
                row,
            });
            (entry, w)
        })
        .collect();
    Ok(finish(results, s, cat, sub))
}

/// Decides membership in `T` by running over every subobject `N3` of `S3`.
pub fn in_class_t<C: ExactCategory, S: Subcategory<C>>(
    cat: &C,
    sub: &S,
    s: &Ses<C::Mor>,
    bound: usize,
) -> Result<ClassReport<C::Mor>> {
    let subs = cat.enumerate_subobjects(cat.target(&s.proj), bound)?;
    let results: Vec<(TraceEntry, Option<ClassWitness<C::Mor>>)> = subs
        .par_iter()
        .enumerate()
        .map(|(index, n)| {
            let (_, v) = cat.cokernel(n);
            let vp = cat.compose(&v, &s.proj);
            let (_, kn) = cat.kernel(&vp);
            let i = cat.solve_post(&kn, &s.incl).expect("T1 maps into N2");
            let p = cat
                .solve_post(n, &cat.compose(&s.proj, &kn))
                .expect("N2 maps onto N3");
            let column = Ses::new(kn, vp);
            let row = Ses::new(i, p);
            let column_exact = sub.hom_exact_contravariant(cat, &column);
            let row_exact = sub.hom_exact_covariant(cat, &row);
            let entry = TraceEntry {
                index,
                dim: cat.total_dim(cat.source(n)),
                column_exact,
                row_exact,
            };
            let w = (column_exact && row_exact).then(|| ClassWitness {
                kind: ClassKind::T,
                split_off: v,
                column,
                row,
            });
            (entry, w)
        })
        .collect();
    Ok(finish(results, s, cat, sub))
}

fn finish<C: ExactCategory, S: Subcategory<C>>(
    results: Vec<(TraceEntry, Option<ClassWitness<C::Mor>>)>,
    s: &Ses<C::Mor>,
    cat: &C,
    sub: &S,
) -> ClassReport<C::Mor> {
    let candidates = results.len();
    let mut trace = Vec::with_capacity(candidates);
    let mut witness = None;
    for (entry, w) in results {
        trace.push(entry);
        if witness.is_none() {
            witness = w;
        }
    }
    if let Some(w) = &witness {
        assert!(w.validate(cat, sub, s), "class witness failed validation");
    }
    ClassReport {
        witness,
        candidates,
        trace,
    }
}

/// `(Hom(P, -)-exact, Hom(-, P)-exact)`; either one forces membership in both classes.
pub fn remark35_sufficient<C: ExactCategory, S: Subcategory<C>>(cat: &C, sub: &S, s: &Ses<C::Mor>) -> (bool, bool) {
    (sub.hom_exact_covariant(cat, s), sub.hom_exact_contravariant(cat, s))
}

/// Position of an examined extension: end-term indices and the extension index.
#[derive(Clone, Debug, Serialize)]
pub struct ExtensionRef {
    pub end: usize,
    pub start: usize,
    pub index: usize,
    pub split: bool,
    pub in_s: bool,
    pub in_t: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Thm36Report {
    /// Every examined conflation in `S` with both ends in `P` splits.
    pub self_orthogonal_s: bool,
    /// The same for `T`.
    pub self_orthogonal_t: bool,
    pub abelian: SweepReport,
    pub consistent: bool,
    pub examined: Vec<ExtensionRef>,
    pub refused: usize,
    pub witnesses: Vec<ExtensionRef>,
}

/// Finite sums of `generators` of total dimension at most `max_total`,
/// one per multiset, including the zero object.
pub fn sums_up_to<C: ExactCategory>(cat: &C, generators: &[C::Obj], max_total: usize) -> Vec<C::Obj> {
    fn rec<C: ExactCategory>(
        cat: &C,
        gens: &[C::Obj],
        start: usize,
        left: usize,
        chosen: &mut Vec<C::Obj>,
        out: &mut Vec<C::Obj>,
    ) {
        out.push(sum_many(cat, chosen).sum);
        for i in start..gens.len() {
            let d = cat.total_dim(&gens[i]);
            if d == 0 || d > left {
                continue;
            }
            chosen.push(gens[i].clone());
            rec(cat, gens, i, left - d, chosen, out);
            chosen.pop();
        }
    }
    let mut out = Vec::new();
    rec(cat, generators, 0, max_total, &mut Vec::new(), &mut out);
    out
}

/// Compares self-orthogonality with respect to `S` and `T` (over every
/// extension class between the listed objects of `P` with combined total
/// dimension at most `bound`) against the abelianness sweep of the quotient.
pub fn thm36_crosscheck<C: ExactCategory, S: Subcategory<C>>(
    q: &Quotient<'_, C, S>,
    p_objects: &[C::Obj],
    sample: &[C::Obj],
    bound: usize,
    cap: usize,
    seed: u64,
) -> Thm36Report {
    let cat = q.cat();
    let sub = q.sub();
    let mut jobs = Vec::new();
    let mut refused = 0;
    for (zi, z) in p_objects.iter().enumerate() {
        for (xi, x) in p_objects.iter().enumerate() {
            if cat.total_dim(z) + cat.total_dim(x) > bound {
                continue;
            }
            match cat.enumerate_extensions(z, x, bound) {
                Ok(exts) => jobs.extend(exts.into_iter().enumerate().map(|(k, e)| (zi, xi, k, e))),
                Err(_) => refused += 1,
            }
        }
    }
    let examined: Vec<Option<ExtensionRef>> = jobs
        .par_iter()
        .map(|(zi, xi, k, e)| {
            let in_s = in_class_s(cat, sub, e, bound).ok()?.member();
            let in_t = in_class_t(cat, sub, e, bound).ok()?.member();
            Some(ExtensionRef {
                end: *zi,
                start: *xi,
                index: *k,
                split: cat.is_split(e).is_some(),
                in_s,
                in_t,
            })
        })
        .collect();
    refused += examined.iter().filter(|e| e.is_none()).count();
    let examined: Vec<ExtensionRef> = examined.into_iter().flatten().collect();
    let witnesses: Vec<ExtensionRef> = examined
        .iter()
        .filter(|e| !e.split && (e.in_s || e.in_t))
        .cloned()
        .collect();
    let self_orthogonal_s = !examined.iter().any(|e| !e.split && e.in_s);
    let self_orthogonal_t = !examined.iter().any(|e| !e.split && e.in_t);
    let abelian = q.verify_abelian(sample, cap, seed);
    Thm36Report {
        consistent: self_orthogonal_s == abelian.pass && self_orthogonal_t == abelian.pass,
        self_orthogonal_s,
        self_orthogonal_t,
        abelian,
        examined,
        refused,
        witnesses,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub trials: usize,
    pub pseudo_cluster_tilting: usize,
    /// Generator indices of a pseudo-cluster-tilting subcategory with non-abelian quotient.
    pub found: Option<Vec<usize>>,
    pub verdict: &'static str,
}

/// Random search for a pseudo-cluster-tilting subcategory with non-abelian
/// quotient among subsets of `candidates`. Finding none proves nothing.
pub fn search_nonabelian<C: ExactCategory>(
    cat: &C,
    candidates: &[C::Obj],
    testset: &[C::Obj],
    trials: usize,
    seed: u64,
) -> SearchReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0;
    let mut found = None;
    let idx: Vec<usize> = (0..candidates.len()).collect();
    for _ in 0..trials {
        let k = 1 + (rand::Rng::gen_range(&mut rng, 0..candidates.len().max(1)));
        let mut chosen: Vec<usize> = idx.choose_multiple(&mut rng, k).copied().collect();
        chosen.sort_unstable();
        let sub = AddSubcat::from_objects(cat, chosen.iter().map(|&i| candidates[i].clone()).collect());
        if !is_pseudo_cluster_tilting(cat, &sub, testset).pass {
            continue;
        }
        hits += 1;
        let q = Quotient::new(cat, &sub);
        if !q.verify_abelian(testset, 4096, seed).pass {
            found = Some(chosen);
            break;
        }
    }
    SearchReport {
        trials,
        pseudo_cluster_tilting: hits,
        verdict: if found.is_some() {
            "counterexample found"
        } else {
            "no counterexample found"
        },
        found,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::AddSubcat;
    use crate::instances::{a2, a3, A3};
    use crate::repcat::RepCategory;

    fn setup() -> (A3, AddSubcat<RepCategory>) {
        let a = a3();
        let named = a.named().into_iter().take(5).map(|(n, o)| (n.to_string(), o)).collect();
        let p = AddSubcat::new(&a.cat, named);
        (a, p)
    }

    #[test]
    fn nonsplit_projective_sequence_is_not_in_s() {
        let (a, p) = setup();
        let s = a.ext_p2_s1();
        let r = in_class_s(&a.cat, &p, &s, 8).unwrap();
        assert!(!r.member());
        assert_eq!(r.candidates, 3);
        let dims: Vec<usize> = r.trace.iter().map(|t| t.dim).collect();
        assert_eq!(dims, vec![0, 1, 2]);
        // U = 0 fails on the row, the other two fail on the column.
        assert!(r.trace[0].column_exact && !r.trace[0].row_exact);
        assert!(!r.trace[1].column_exact);
        assert!(!r.trace[2].column_exact);
        assert_eq!(remark35_sufficient(&a.cat, &p, &s), (false, false));
        assert!(!in_class_t(&a.cat, &p, &s, 8).unwrap().member());
    }

    #[test]
    fn split_and_exact_sequences_are_members() {
        let (a, p) = setup();
        let c = &a.cat;
        for z in a.indecomposables() {
            for x in a.indecomposables() {
                for e in c.enumerate_extensions(&z, &x, 8).unwrap() {
                    let (cov, contra) = remark35_sufficient(c, &p, &e);
                    let s = in_class_s(c, &p, &e, 8).unwrap();
                    let t = in_class_t(c, &p, &e, 8).unwrap();
                    if cov || contra {
                        assert!(s.member() && t.member());
                    }
                    if c.is_split(&e).is_some() {
                        assert!(s.member());
                        assert_eq!(s.trace[0].dim, 0);
                        assert!(s.trace[0].column_exact && s.trace[0].row_exact);
                    }
                }
            }
        }
    }

    #[test]
    fn remark_on_a2() {
        let b = a2();
        let only_p1 = AddSubcat::from_objects(&b.cat, vec![b.p1.clone()]);
        let (cov, _) = remark35_sufficient(&b.cat, &only_p1, &b.ses);
        assert!(cov);
        assert!(in_class_s(&b.cat, &only_p1, &b.ses, 8).unwrap().member());
    }

    #[test]
    fn theorem_crosscheck_on_a3() {
        let (a, p) = setup();
        let q = Quotient::new(&a.cat, &p);
        let objs = sums_up_to(&a.cat, p.generators(), 4);
        let r = thm36_crosscheck(&q, &objs, &a.indecomposables(), 5, 4096, 0);
        assert!(r.self_orthogonal_s && r.self_orthogonal_t);
        assert!(r.abelian.pass);
        assert!(r.consistent);
        assert_eq!(r.refused, 0);
        assert!(r.examined.iter().any(|e| !e.split));
    }

    #[test]
    fn whole_category_crosscheck() {
        let b = a2();
        let all = AddSubcat::from_objects(&b.cat, b.indecomposables());
        let q = Quotient::new(&b.cat, &all);
        let r = thm36_crosscheck(&q, &b.indecomposables(), &b.indecomposables(), 4, 4096, 0);
        assert!(r.abelian.pass);
        assert!(r.consistent);
    }

    #[test]
    fn class_t_is_class_s_of_the_dual() {
        let (a, p) = setup();
        let c = &a.cat;
        let op = c.opposite();
        let dual_gens: Vec<_> = p.generators().iter().map(|g| c.dual_obj(g)).collect();
        let dp = AddSubcat::from_objects(&op, dual_gens);
        let mut seqs = vec![a.ext_p2_s1(), a.ext_s3_i2()];
        for z in a.indecomposables() {
            for x in a.indecomposables() {
                seqs.extend(c.enumerate_extensions(&z, &x, 8).unwrap());
            }
        }
        for s in &seqs {
            let t = in_class_t(c, &p, s, 8).unwrap().member();
            let sd = in_class_s(&op, &dp, &c.dual_ses(s), 8).unwrap().member();
            assert_eq!(t, sd);
            let sm = in_class_s(c, &p, s, 8).unwrap().member();
            let td = in_class_t(&op, &dp, &c.dual_ses(s), 8).unwrap().member();
            assert_eq!(sm, td);
        }
    }

    #[test]
    fn membership_is_invariant_under_equivalence() {
        let (a, p) = setup();
        let c = &a.cat;
        let exts = c.enumerate_extensions(&a.s1, &a.p2, 8).unwrap();
        let target = a.ext_p2_s1();
        for e in exts.iter().filter(|e| c.extensions_equivalent(e, &target)) {
            assert!(!in_class_s(c, &p, e, 8).unwrap().member());
        }
    }

    #[test]
    fn bound_is_enforced() {
        let (a, p) = setup();
        let big = a.cat.direct_sum_many(&[a.p1.clone(), a.p1.clone(), a.p1.clone()]);
        let s = a.cat.split_ses(&big, &a.s1);
        assert!(in_class_s(&a.cat, &p, &s, 8).is_err());
    }

    #[test]
    fn random_search_reports_honestly() {
        let a = a3();
        let r = search_nonabelian(&a.cat, &a.indecomposables(), &a.indecomposables(), 20, 3);
        assert_eq!(r.trials, 20);
        if r.found.is_none() {
            assert_eq!(r.verdict, "no counterexample found");
        }
    }
}
