//! Finite-dimensional representations of a finite quiver over `F_p`.
//!
//! The exact structure is the abelian one: every short exact sequence is a
//! conflation. Hom-spaces are solution spaces of the commuting-square
//! equations, kernels and cokernels are computed vertex by vertex.
//!
//! Quivers may carry length-two relations. The command-line front end never
//! produces them; they exist so that the category of conflations can be
//! hosted as representations of a grid quiver (see [`crate::conflcat`]).

use std::collections::HashMap;
use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::category::{Biproduct, ExactCategory, Ses};
use crate::enumerate;
use crate::error::{Error, Result};
use crate::fflinalg::{all_subspaces, all_vectors, quotient_space, Field, FpMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// One summand `coef * (second ∘ first)` of a relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationTerm {
    pub coef: i64,
    pub first: usize,
    pub second: usize,
}

/// A linear combination of paths of length two that must vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<RelationTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<Relation>,
}

impl Quiver {
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut seen = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if seen.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate vertex `{v}`")));
            }
        }
        let mut names = HashMap::new();
        let mut out = Vec::with_capacity(arrows.len());
        for (name, from, to) in arrows {
            let (name, from, to) = (name.as_ref(), from.as_ref(), to.as_ref());
            if names.insert(name.to_string(), ()).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate arrow `{name}`")));
            }
            let source = *seen
                .get(from)
                .ok_or_else(|| Error::InvalidQuiver(format!("arrow `{name}` starts at unknown vertex `{from}`")))?;
            let target = *seen
                .get(to)
                .ok_or_else(|| Error::InvalidQuiver(format!("arrow `{name}` ends at unknown vertex `{to}`")))?;
            out.push(Arrow {
                name: name.to_string(),
                source,
                target,
            });
        }
        Ok(Quiver {
            vertices,
            arrows: out,
            relations: Vec::new(),
        })
    }

    /// The linearly oriented quiver `1 -> 2 -> ... -> n` with arrows `a1, ..., a(n-1)`.
    pub fn linear(n: usize) -> Self {
        let vs: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arrows: Vec<(String, String, String)> = (1..n)
            .map(|i| (format!("a{i}"), i.to_string(), (i + 1).to_string()))
            .collect();
        Quiver::new(&vs, &arrows).expect("linear quiver is well formed")
    }

    pub fn with_relations(mut self, relations: Vec<Relation>) -> Result<Self> {
        for r in &relations {
            for t in &r.terms {
                let (a, b) = (self.arrow(t.first), self.arrow(t.second));
                if a.target != b.source {
                    return Err(Error::InvalidQuiver(format!(
                        "relation term {} then {} is not composable",
                        a.name, b.name
                    )));
                }
            }
        }
        self.relations = relations;
        Ok(self)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Same vertices, every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: a.name.clone(),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|r| Relation {
                    terms: r
                        .terms
                        .iter()
                        .map(|t| RelationTerm {
                            coef: t.coef,
                            first: t.second,
                            second: t.first,
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

/// A representation: one vector space per vertex, one matrix per arrow.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RepObj {
    dims: Vec<usize>,
    maps: Vec<FpMatrix>,
}

impl RepObj {
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn maps(&self) -> &[FpMatrix] {
        &self.maps
    }

    pub fn map(&self, a: usize) -> &FpMatrix {
        &self.maps[a]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// A morphism of representations: one matrix per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct RepMor {
    src: Arc<RepObj>,
    dst: Arc<RepObj>,
    comps: Vec<FpMatrix>,
}

impl RepMor {
    pub fn src(&self) -> &RepObj {
        &self.src
    }

    pub fn dst(&self) -> &RepObj {
        &self.dst
    }

    pub fn comps(&self) -> &[FpMatrix] {
        &self.comps
    }

    pub fn comp(&self, v: usize) -> &FpMatrix {
        &self.comps[v]
    }
}

impl Serialize for RepMor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RepMor", 3)?;
        st.serialize_field("src_dims", &self.src.dims)?;
        st.serialize_field("dst_dims", &self.dst.dims)?;
        st.serialize_field("comps", &self.comps)?;
        st.end()
    }
}

/// A short exact sequence of representations.
pub type SES = Ses<RepMor>;

/// The category `rep(Q)` over `F_p` with all short exact sequences as conflations.
#[derive(Clone, Debug)]
pub struct RepCategory {
    quiver: Quiver,
    field: Field,
}

impl RepCategory {
    pub fn new(quiver: Quiver, field: Field) -> Self {
        RepCategory { quiver, field }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    /// Validated representation from dimension vector and arrow matrices.
    pub fn object(&self, dims: Vec<usize>, maps: Vec<FpMatrix>) -> Result<RepObj> {
        let q = &self.quiver;
        if dims.len() != q.num_vertices() {
            return Err(Error::InvalidObject(format!(
                "expected {} dimensions, got {}",
                q.num_vertices(),
                dims.len()
            )));
        }
        if maps.len() != q.arrows.len() {
            return Err(Error::InvalidObject(format!(
                "expected {} arrow matrices, got {}",
                q.arrows.len(),
                maps.len()
            )));
        }
        for (a, m) in q.arrows.iter().zip(&maps) {
            let want = (dims[a.target], dims[a.source]);
            if m.shape() != want {
                return Err(Error::InvalidObject(format!(
                    "arrow `{}`: expected {}x{}, got {}x{}",
                    a.name, want.0, want.1, m.rows(), m.cols()
                )));
            }
            if m.field() != self.field {
                return Err(Error::InvalidObject(format!("arrow `{}`: wrong field", a.name)));
            }
        }
        let obj = RepObj { dims, maps };
        for (i, r) in q.relations.iter().enumerate() {
            if !self.relation_value(&obj, r).is_zero() {
                return Err(Error::InvalidObject(format!("relation {i} does not hold")));
            }
        }
        Ok(obj)
    }

    /// Convenience constructor from integer matrices (rows of each arrow matrix).
    pub fn object_from_ints(&self, dims: &[usize], maps: &[Vec<Vec<i64>>]) -> Result<RepObj> {
        let q = &self.quiver;
        let mats = q
            .arrows
            .iter()
            .zip(maps)
            .map(|(a, rows)| {
                if dims[a.target] == 0 || dims[a.source] == 0 {
                    Ok(FpMatrix::zeros(self.field, dims[a.target], dims[a.source]))
                } else {
                    FpMatrix::from_rows(self.field, rows)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        if mats.len() != q.arrows.len() {
            return Err(Error::InvalidObject("missing arrow matrices".into()));
        }
        self.object(dims.to_vec(), mats)
    }

    /// Validated morphism; checks the commuting-square law at every arrow.
    pub fn morphism(&self, src: &RepObj, dst: &RepObj, comps: Vec<FpMatrix>) -> Result<RepMor> {
        let q = &self.quiver;
        if comps.len() != q.num_vertices() {
            return Err(Error::InvalidMorphism("wrong number of components".into()));
        }
        for (v, c) in comps.iter().enumerate() {
            if c.shape() != (dst.dims[v], src.dims[v]) {
                return Err(Error::InvalidMorphism(format!(
                    "vertex `{}`: expected {}x{}, got {}x{}",
                    q.vertices[v],
                    dst.dims[v],
                    src.dims[v],
                    c.rows(),
                    c.cols()
                )));
            }
        }
        for (i, a) in q.arrows.iter().enumerate() {
            let lhs = comps[a.target].mul(&src.maps[i]);
            let rhs = dst.maps[i].mul(&comps[a.source]);
            if lhs != rhs {
                return Err(Error::InvalidMorphism(format!("square at arrow `{}` does not commute", a.name)));
            }
        }
        Ok(RepMor {
            src: Arc::new(src.clone()),
            dst: Arc::new(dst.clone()),
            comps,
        })
    }

    fn relation_value(&self, x: &RepObj, r: &Relation) -> FpMatrix {
        let first = self.quiver.arrow(r.terms[0].first);
        let second = self.quiver.arrow(r.terms[0].second);
        let mut acc = FpMatrix::zeros(self.field, x.dims[second.target], x.dims[first.source]);
        for t in &r.terms {
            let prod = x.maps[t.second].mul(&x.maps[t.first]);
            acc = acc.add(&prod.scale(self.field.reduce(t.coef)));
        }
        acc
    }

    /// The simple representation at vertex `v`.
    pub fn simple(&self, v: usize) -> RepObj {
        let mut dims = vec![0; self.quiver.num_vertices()];
        dims[v] = 1;
        self.zero_maps(dims)
    }

    fn zero_maps(&self, dims: Vec<usize>) -> RepObj {
        let maps = self
            .quiver
            .arrows
            .iter()
            .map(|a| FpMatrix::zeros(self.field, dims[a.target], dims[a.source]))
            .collect();
        RepObj { dims, maps }
    }

    /// Direct sum of a list of objects (zero object for an empty list).
    pub fn direct_sum_many(&self, objs: &[RepObj]) -> RepObj {
        objs.iter()
            .fold(self.zero_object(), |acc, o| self.direct_sum(&acc, o).sum)
    }

    /// Vertex-wise exactness test for a candidate short exact sequence.
    pub fn is_ses(&self, s: &SES) -> bool {
        if *s.incl.dst != *s.proj.src {
            return false;
        }
        let (x, y, z) = (&*s.incl.src, &*s.incl.dst, &*s.proj.dst);
        (0..self.quiver.num_vertices()).all(|v| {
            s.proj.comps[v].mul(&s.incl.comps[v]).is_zero()
                && s.incl.comps[v].rank() == x.dims[v]
                && s.proj.comps[v].rank() == z.dims[v]
                && x.dims[v] + z.dims[v] == y.dims[v]
        })
    }

    /// Validated short exact sequence.
    pub fn ses(&self, incl: RepMor, proj: RepMor) -> Result<SES> {
        let s = Ses::new(incl, proj);
        if self.is_ses(&s) {
            Ok(s)
        } else {
            Err(Error::NotExact("sequence is not exact at some vertex".into()))
        }
    }

    /// The split sequence `0 -> x -> x (+) z -> z -> 0`.
    pub fn split_ses(&self, x: &RepObj, z: &RepObj) -> SES {
        let bp = self.direct_sum(x, z);
        Ses::new(bp.inj[0].clone(), bp.proj[1].clone())
    }

    /// Whether two extensions of `z` by `x` are equivalent (an isomorphism of
    /// middle terms compatible with both end maps).
    pub fn extensions_equivalent(&self, a: &SES, b: &SES) -> bool {
        let (ya, yb) = (&*a.incl.dst, &*b.incl.dst);
        if a.incl.src != b.incl.src || a.proj.dst != b.proj.dst || ya.dims != yb.dims {
            return false;
        }
        let basis = self.hom_basis(ya, yb);
        let cols: Vec<Vec<u8>> = basis
            .iter()
            .map(|h| {
                let mut v = self.coords(&self.compose(h, &a.incl));
                v.extend(self.coords(&self.compose(&b.proj, h)));
                v
            })
            .collect();
        let mut rhs = self.coords(&b.incl);
        rhs.extend(self.coords(&a.proj));
        FpMatrix::from_columns(self.field, rhs.len(), &cols)
            .solve_vec(&rhs)
            .is_some()
    }

    fn ext_data(&self, z: &RepObj, x: &RepObj) -> ExtData {
        let q = &self.quiver;
        let fld = self.field;
        // Coordinates of a cocycle: for each arrow a: s -> t, a dx(t) x dz(s) block.
        let mut e_off = Vec::with_capacity(q.arrows.len());
        let mut n_e = 0;
        for a in &q.arrows {
            e_off.push(n_e);
            n_e += x.dims[a.target] * z.dims[a.source];
        }
        let mut h_off = Vec::with_capacity(q.num_vertices());
        let mut n_h = 0;
        for v in 0..q.num_vertices() {
            h_off.push(n_h);
            n_h += x.dims[v] * z.dims[v];
        }
        let e_idx = |a: usize, r: usize, c: usize| e_off[a] + r * z.dims[q.arrows[a].source] + c;
        let h_idx = |v: usize, r: usize, c: usize| h_off[v] + r * z.dims[v] + c;

        // Relation constraints: block (X, Z) of Σ coef Y_second Y_first vanishes.
        let mut rel_rows: Vec<Vec<u8>> = Vec::new();
        for r in &q.relations {
            let a0 = q.arrow(r.terms[0].first);
            let b0 = q.arrow(r.terms[0].second);
            let (rows, cols) = (x.dims[b0.target], z.dims[a0.source]);
            for i in 0..rows {
                for j in 0..cols {
                    let mut row = vec![0u8; n_e];
                    for t in &r.terms {
                        let c = fld.reduce(t.coef);
                        let (fa, sa) = (t.first, t.second);
                        let mid = q.arrows[fa].target;
                        // X_second * e_first
                        for k in 0..x.dims[mid] {
                            let coeff = fld.mul(c, x.maps[sa].get(i, k));
                            let idx = e_idx(fa, k, j);
                            row[idx] = fld.add(row[idx], coeff);
                        }
                        // e_second * Z_first
                        for k in 0..z.dims[mid] {
                            let coeff = fld.mul(c, z.maps[fa].get(k, j));
                            let idx = e_idx(sa, i, k);
                            row[idx] = fld.add(row[idx], coeff);
                        }
                    }
                    rel_rows.push(row);
                }
            }
        }
        let cocycles = if rel_rows.is_empty() {
            FpMatrix::identity(fld, n_e)
        } else {
            let m = FpMatrix::from_fn(fld, rel_rows.len(), n_e, |i, j| rel_rows[i][j]);
            m.kernel_basis()
        };

        // Coboundaries: h -> (h_t Z_a - X_a h_s)_a.
        let mut delta = FpMatrix::zeros(fld, n_e, n_h);
        for (ai, a) in q.arrows.iter().enumerate() {
            let (s, t) = (a.source, a.target);
            for r in 0..x.dims[t] {
                for c in 0..z.dims[s] {
                    let row = e_idx(ai, r, c);
                    for k in 0..z.dims[t] {
                        let col = h_idx(t, r, k);
                        let v = fld.add(delta.get(row, col), z.maps[ai].get(k, c));
                        delta.set(row, col, v);
                    }
                    for k in 0..x.dims[s] {
                        let col = h_idx(s, k, c);
                        let v = fld.sub(delta.get(row, col), x.maps[ai].get(r, k));
                        delta.set(row, col, v);
                    }
                }
            }
        }
        let in_cocycle_coords = cocycles
            .solve_right(&delta)
            .expect("coboundaries satisfy the relations");
        let quotient = quotient_space(fld, cocycles.cols(), &in_cocycle_coords);
        ExtData {
            e_off,
            cocycles,
            quotient_lift: quotient.lift,
        }
    }

    /// `dim Ext^1(z, x)` as cocycles modulo coboundaries.
    pub fn ext_dimension(&self, z: &RepObj, x: &RepObj) -> usize {
        self.ext_data(z, x).quotient_lift.cols()
    }

    /// The extension `0 -> x -> Y -> z -> 0` with `Y_a = [[X_a, e_a], [0, Z_a]]`.
    pub fn extension_from_cocycle(&self, z: &RepObj, x: &RepObj, e: &[u8]) -> SES {
        let q = &self.quiver;
        let fld = self.field;
        let data = self.ext_data(z, x);
        self.build_extension(z, x, e, &data.e_off, fld, q)
    }

    fn build_extension(&self, z: &RepObj, x: &RepObj, e: &[u8], e_off: &[usize], fld: Field, q: &Quiver) -> SES {
        let dims: Vec<usize> = x.dims.iter().zip(&z.dims).map(|(a, b)| a + b).collect();
        let maps = q
            .arrows
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let (s, t) = (a.source, a.target);
                let mut m = FpMatrix::zeros(fld, dims[t], dims[s]);
                m.paste(0, 0, &x.maps[ai]);
                m.paste(x.dims[t], x.dims[s], &z.maps[ai]);
                for r in 0..x.dims[t] {
                    for c in 0..z.dims[s] {
                        m.set(r, x.dims[s] + c, e[e_off[ai] + r * z.dims[s] + c]);
                    }
                }
                m
            })
            .collect();
        let y = Arc::new(RepObj { dims, maps });
        let incl = RepMor {
            src: Arc::new(x.clone()),
            dst: y.clone(),
            comps: (0..q.num_vertices())
                .map(|v| {
                    let mut m = FpMatrix::zeros(fld, y.dims[v], x.dims[v]);
                    m.paste(0, 0, &FpMatrix::identity(fld, x.dims[v]));
                    m
                })
                .collect(),
        };
        let proj = RepMor {
            src: y.clone(),
            dst: Arc::new(z.clone()),
            comps: (0..q.num_vertices())
                .map(|v| {
                    let mut m = FpMatrix::zeros(fld, z.dims[v], y.dims[v]);
                    m.paste(0, x.dims[v], &FpMatrix::identity(fld, z.dims[v]));
                    m
                })
                .collect(),
        };
        Ses::new(incl, proj)
    }

    /// Every representation with per-vertex dimension at most `max_dim`
    /// (all matrix choices, not reduced up to isomorphism).
    pub fn all_representations(&self, max_dim: usize) -> Vec<RepObj> {
        let q = &self.quiver;
        let mut out = Vec::new();
        for dims in all_dim_vectors(q.num_vertices(), max_dim) {
            let sizes: Vec<(usize, usize)> = q
                .arrows
                .iter()
                .map(|a| (dims[a.target], dims[a.source]))
                .collect();
            let n: usize = sizes.iter().map(|(r, c)| r * c).sum();
            for entries in all_vectors(self.field, n) {
                let mut off = 0;
                let maps = sizes
                    .iter()
                    .map(|&(r, c)| {
                        let m = FpMatrix::from_vec(self.field, r, c, entries[off..off + r * c].to_vec());
                        off += r * c;
                        m
                    })
                    .collect();
                if let Ok(obj) = self.object(dims.clone(), maps) {
                    out.push(obj);
                }
            }
        }
        out
    }

    /// Representatives of the isomorphism classes among `objs`, first occurrence kept.
    pub fn iso_classes(&self, objs: &[RepObj]) -> Vec<RepObj> {
        dedup_isomorphic(self, objs)
    }

    /// Whether `x` is nonzero with no idempotent endomorphism besides 0 and 1.
    /// Refuses when `End(x)` has more than `cap` elements.
    pub fn is_indecomposable(&self, x: &RepObj, cap: usize) -> Result<bool> {
        if x.total_dim() == 0 {
            return Ok(false);
        }
        let basis = self.hom_basis(x, x);
        let size = (self.field.characteristic() as usize).checked_pow(basis.len() as u32);
        if size.is_none_or(|s| s > cap) {
            return Err(Error::BoundExceeded {
                required: size.unwrap_or(usize::MAX),
                bound: cap,
            });
        }
        let id = self.identity(x);
        Ok(all_vectors(self.field, basis.len()).all(|c| {
            let e = self.combine(x, x, &basis, &c);
            e == id || self.is_zero_mor(&e) || self.compose(&e, &e) != e
        }))
    }

    /// Isomorphism classes of indecomposables with per-vertex dimension at most `max_dim`.
    pub fn indecomposables(&self, max_dim: usize, cap: usize) -> Result<Vec<RepObj>> {
        let mut out = Vec::new();
        for x in self.iso_classes(&self.all_representations(max_dim)) {
            if self.is_indecomposable(&x, cap)? {
                out.push(x);
            }
        }
        Ok(out)
    }

    /// The same category over the opposite quiver.
    pub fn opposite(&self) -> RepCategory {
        RepCategory::new(self.quiver.opposite(), self.field)
    }

    /// The vector-space dual `D x = Hom(x, k)`, a representation of the opposite quiver.
    pub fn dual_obj(&self, x: &RepObj) -> RepObj {
        RepObj {
            dims: x.dims.clone(),
            maps: x.maps.iter().map(FpMatrix::transpose).collect(),
        }
    }

    /// `D f: D y -> D x` for `f: x -> y`.
    pub fn dual_mor(&self, f: &RepMor) -> RepMor {
        RepMor {
            src: Arc::new(self.dual_obj(&f.dst)),
            dst: Arc::new(self.dual_obj(&f.src)),
            comps: f.comps.iter().map(FpMatrix::transpose).collect(),
        }
    }

    /// `0 -> D z -> D y -> D x -> 0`.
    pub fn dual_ses(&self, s: &SES) -> SES {
        Ses::new(self.dual_mor(&s.proj), self.dual_mor(&s.incl))
    }

    fn offsets(&self, x: &RepObj, y: &RepObj) -> (Vec<usize>, usize) {
        let mut off = Vec::with_capacity(x.dims.len());
        let mut n = 0;
        for v in 0..x.dims.len() {
            off.push(n);
            n += y.dims[v] * x.dims[v];
        }
        (off, n)
    }
}

struct ExtData {
    e_off: Vec<usize>,
    cocycles: FpMatrix,
    quotient_lift: FpMatrix,
}

fn all_dim_vectors(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=max).map(move |d| {
                    let mut w = v.clone();
                    w.push(d);
                    w
                })
            })
            .collect();
    }
    out
}

/// Keeps the first object of every isomorphism class.
///
/// Cheap invariants (total dimension, endomorphism dimensions, hom dimensions
/// in both directions) filter candidate pairs before the invertible-morphism
/// search.
pub fn dedup_isomorphic<C: ExactCategory>(cat: &C, objs: &[C::Obj]) -> Vec<C::Obj> {
    let mut reps: Vec<(C::Obj, usize)> = Vec::new();
    for o in objs {
        let end_o = cat.hom_basis(o, o).len();
        let dup = reps.iter().any(|(r, end_r)| {
            *end_r == end_o
                && cat.total_dim(r) == cat.total_dim(o)
                && cat.hom_basis(r, o).len() == end_o
                && cat.hom_basis(o, r).len() == end_o
                && cat.find_iso(r, o, enumerate::DEFAULT_CAP).is_some()
        });
        if !dup {
            reps.push((o.clone(), end_o));
        }
    }
    reps.into_iter().map(|(o, _)| o).collect()
}

impl ExactCategory for RepCategory {
    type Obj = RepObj;
    type Mor = RepMor;

    fn field(&self) -> Field {
        self.field
    }

    fn source<'a>(&self, f: &'a RepMor) -> &'a RepObj {
        &f.src
    }

    fn target<'a>(&self, f: &'a RepMor) -> &'a RepObj {
        &f.dst
    }

    fn total_dim(&self, x: &RepObj) -> usize {
        x.total_dim()
    }

    fn describe_obj(&self, x: &RepObj) -> String {
        let dims: Vec<String> = x.dims.iter().map(|d| d.to_string()).collect();
        format!("representation with dimension vector ({})", dims.join(","))
    }

    fn zero_object(&self) -> RepObj {
        self.zero_maps(vec![0; self.quiver.num_vertices()])
    }

    fn hom_basis(&self, x: &RepObj, y: &RepObj) -> Vec<RepMor> {
        let q = &self.quiver;
        let fld = self.field;
        let (off, n) = self.offsets(x, y);
        let var = |v: usize, r: usize, c: usize| off[v] + r * x.dims[v] + c;
        let n_eq: usize = q.arrows.iter().map(|a| y.dims[a.target] * x.dims[a.source]).sum();
        let mut sys = FpMatrix::zeros(fld, n_eq, n);
        let mut row = 0;
        for (ai, a) in q.arrows.iter().enumerate() {
            let (s, t) = (a.source, a.target);
            let (xa, ya) = (&x.maps[ai], &y.maps[ai]);
            for r in 0..y.dims[t] {
                for c in 0..x.dims[s] {
                    // (f_t X_a)[r][c] - (Y_a f_s)[r][c]
                    for k in 0..x.dims[t] {
                        let idx = var(t, r, k);
                        sys.set(row, idx, fld.add(sys.get(row, idx), xa.get(k, c)));
                    }
                    for k in 0..y.dims[s] {
                        let idx = var(s, k, c);
                        sys.set(row, idx, fld.sub(sys.get(row, idx), ya.get(r, k)));
                    }
                    row += 1;
                }
            }
        }
        let kb = sys.kernel_basis();
        let (xs, ys) = (Arc::new(x.clone()), Arc::new(y.clone()));
        (0..kb.cols())
            .map(|j| {
                let col = kb.column(j);
                RepMor {
                    src: xs.clone(),
                    dst: ys.clone(),
                    comps: split_comps(fld, x, y, &col),
                }
            })
            .collect()
    }

    fn ambient_dim(&self, x: &RepObj, y: &RepObj) -> usize {
        self.offsets(x, y).1
    }

    fn coords(&self, f: &RepMor) -> Vec<u8> {
        f.comps.iter().flat_map(|c| c.as_slice().iter().copied()).collect()
    }

    fn from_coords(&self, x: &RepObj, y: &RepObj, v: &[u8]) -> RepMor {
        RepMor {
            src: Arc::new(x.clone()),
            dst: Arc::new(y.clone()),
            comps: split_comps(self.field, x, y, v),
        }
    }

    fn compose(&self, g: &RepMor, f: &RepMor) -> RepMor {
        debug_assert_eq!(f.dst.dims, g.src.dims, "composition of non-composable morphisms");
        RepMor {
            src: f.src.clone(),
            dst: g.dst.clone(),
            comps: g.comps.iter().zip(&f.comps).map(|(a, b)| a.mul(b)).collect(),
        }
    }

    fn identity(&self, x: &RepObj) -> RepMor {
        let xs = Arc::new(x.clone());
        RepMor {
            src: xs.clone(),
            dst: xs,
            comps: x.dims.iter().map(|&d| FpMatrix::identity(self.field, d)).collect(),
        }
    }

    fn direct_sum(&self, x: &RepObj, y: &RepObj) -> Biproduct<RepObj, RepMor> {
        let fld = self.field;
        let dims: Vec<usize> = x.dims.iter().zip(&y.dims).map(|(a, b)| a + b).collect();
        let maps = x
            .maps
            .iter()
            .zip(&y.maps)
            .map(|(a, b)| FpMatrix::block_diag(fld, &[a, b]))
            .collect();
        let sum = Arc::new(RepObj { dims, maps });
        let (xs, ys) = (Arc::new(x.clone()), Arc::new(y.clone()));
        let inj = |first: bool| -> Vec<FpMatrix> {
            (0..x.dims.len())
                .map(|v| {
                    let mut m = FpMatrix::zeros(fld, sum.dims[v], if first { x.dims[v] } else { y.dims[v] });
                    let (r0, d) = if first { (0, x.dims[v]) } else { (x.dims[v], y.dims[v]) };
                    m.paste(r0, 0, &FpMatrix::identity(fld, d));
                    m
                })
                .collect()
        };
        let i0 = inj(true);
        let i1 = inj(false);
        Biproduct {
            sum: (*sum).clone(),
            proj: [
                RepMor {
                    src: sum.clone(),
                    dst: xs.clone(),
                    comps: i0.iter().map(FpMatrix::transpose).collect(),
                },
                RepMor {
                    src: sum.clone(),
                    dst: ys.clone(),
                    comps: i1.iter().map(FpMatrix::transpose).collect(),
                },
            ],
            inj: [
                RepMor {
                    src: xs,
                    dst: sum.clone(),
                    comps: i0,
                },
                RepMor {
                    src: ys,
                    dst: sum,
                    comps: i1,
                },
            ],
        }
    }

    fn kernel(&self, f: &RepMor) -> (RepObj, RepMor) {
        let q = &self.quiver;
        let bases: Vec<FpMatrix> = f.comps.iter().map(FpMatrix::kernel_basis).collect();
        let dims: Vec<usize> = bases.iter().map(FpMatrix::cols).collect();
        let maps = q
            .arrows
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let image = f.src.maps[ai].mul(&bases[a.source]);
                bases[a.target]
                    .solve_right(&image)
                    .expect("kernel is stable under arrow maps")
            })
            .collect();
        let k = Arc::new(RepObj { dims, maps });
        let mor = RepMor {
            src: k.clone(),
            dst: f.src.clone(),
            comps: bases,
        };
        ((*k).clone(), mor)
    }

    fn cokernel(&self, f: &RepMor) -> (RepObj, RepMor) {
        let q = &self.quiver;
        let quots: Vec<_> = f
            .comps
            .iter()
            .enumerate()
            .map(|(v, c)| quotient_space(self.field, f.dst.dims[v], c))
            .collect();
        let dims: Vec<usize> = quots.iter().map(|qm| qm.dim()).collect();
        let maps = q
            .arrows
            .iter()
            .enumerate()
            .map(|(ai, a)| quots[a.target].proj.mul(&f.dst.maps[ai]).mul(&quots[a.source].lift))
            .collect();
        let c = Arc::new(RepObj { dims, maps });
        let mor = RepMor {
            src: f.dst.clone(),
            dst: c.clone(),
            comps: quots.into_iter().map(|qm| qm.proj).collect(),
        };
        ((*c).clone(), mor)
    }

    fn is_iso(&self, f: &RepMor) -> bool {
        f.comps.iter().all(FpMatrix::is_invertible)
    }

    fn is_conflation(&self, s: &SES) -> bool {
        self.is_ses(s)
    }

    fn enumerate_subobjects(&self, x: &RepObj, bound: usize) -> Result<Vec<RepMor>> {
        if x.total_dim() > bound {
            return Err(Error::BoundExceeded {
                required: x.total_dim(),
                bound,
            });
        }
        let q = &self.quiver;
        let nv = q.num_vertices();
        let candidates: Vec<Vec<FpMatrix>> = x.dims.iter().map(|&d| all_subspaces(self.field, d)).collect();
        let mut found: Vec<Vec<FpMatrix>> = Vec::new();
        let mut chosen: Vec<FpMatrix> = Vec::with_capacity(nv);

        fn stable(x: &RepObj, q: &Quiver, chosen: &[FpMatrix], v: usize) -> bool {
            q.arrows.iter().enumerate().all(|(ai, a)| {
                let (s, t) = (a.source, a.target);
                if s > v || t > v || (s != v && t != v) {
                    return true;
                }
                let image = x.maps[ai].mul(&chosen[s]);
                chosen[t].spans(&image)
            })
        }

        fn rec(
            v: usize,
            x: &RepObj,
            q: &Quiver,
            candidates: &[Vec<FpMatrix>],
            chosen: &mut Vec<FpMatrix>,
            found: &mut Vec<Vec<FpMatrix>>,
        ) {
            if v == candidates.len() {
                found.push(chosen.clone());
                return;
            }
            for c in &candidates[v] {
                chosen.push(c.clone());
                if stable(x, q, chosen, v) {
                    rec(v + 1, x, q, candidates, chosen, found);
                }
                chosen.pop();
            }
        }

        rec(0, x, q, &candidates, &mut chosen, &mut found);
        let xs = Arc::new(x.clone());
        let mut subs: Vec<RepMor> = found
            .into_iter()
            .map(|bases| {
                let dims: Vec<usize> = bases.iter().map(FpMatrix::cols).collect();
                let maps = q
                    .arrows
                    .iter()
                    .enumerate()
                    .map(|(ai, a)| {
                        bases[a.target]
                            .solve_right(&x.maps[ai].mul(&bases[a.source]))
                            .expect("stable subspace")
                    })
                    .collect();
                RepMor {
                    src: Arc::new(RepObj { dims, maps }),
                    dst: xs.clone(),
                    comps: bases,
                }
            })
            .collect();
        subs.sort_by_key(|m| m.src.total_dim());
        Ok(subs)
    }

    fn enumerate_extensions(&self, z: &RepObj, x: &RepObj, bound: usize) -> Result<Vec<SES>> {
        let total = z.total_dim() + x.total_dim();
        if total > bound {
            return Err(Error::BoundExceeded { required: total, bound });
        }
        let data = self.ext_data(z, x);
        let d = data.quotient_lift.cols();
        let (coeffs, exhaustive) = enumerate::elements(self.field, d, enumerate::DEFAULT_CAP, 0);
        if !exhaustive {
            return Err(Error::BoundExceeded {
                required: d,
                bound: enumerate::DEFAULT_CAP,
            });
        }
        let reps = data.cocycles.mul(&data.quotient_lift);
        Ok(coeffs
            .iter()
            .map(|c| {
                let e = reps.mul_vec(c);
                self.build_extension(z, x, &e, &data.e_off, self.field, &self.quiver)
            })
            .collect())
    }
}

fn split_comps(fld: Field, x: &RepObj, y: &RepObj, v: &[u8]) -> Vec<FpMatrix> {
    let mut off = 0;
    x.dims
        .iter()
        .zip(&y.dims)
        .map(|(&dx, &dy)| {
            let m = FpMatrix::from_vec(fld, dy, dx, v[off..off + dx * dy].to_vec());
            off += dx * dy;
            m
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::Side;
    use crate::instances::{a2, a3};

    #[test]
    fn quiver_validation() {
        assert!(Quiver::new(&["1", "1"], &[]).is_err());
        assert!(Quiver::new(&["1", "2"], &[("a", "1", "3")]).is_err());
        assert!(Quiver::new(&["1", "2"], &[("a", "1", "2"), ("a", "2", "1")]).is_err());
        let q = Quiver::new(&["1"], &[("loop", "1", "1")]).unwrap();
        assert_eq!(q.arrows()[0].source, 0);
    }

    #[test]
    fn object_shape_errors() {
        let a = a2();
        let bad = a.cat.object(vec![1, 1], vec![FpMatrix::zeros(a.cat.field(), 2, 1)]);
        assert!(matches!(bad, Err(Error::InvalidObject(_))));
    }

    #[test]
    fn hom_dimensions_on_a2() {
        let a = a2();
        let c = &a.cat;
        assert_eq!(c.hom_basis(&a.p1, &a.s1).len(), 1);
        assert_eq!(c.hom_basis(&a.s1, &a.p1).len(), 0);
        assert_eq!(c.hom_basis(&a.s2, &a.p1).len(), 1);
        for x in [&a.s1, &a.s2, &a.p1] {
            let basis = c.hom_basis(x, x);
            let id = c.identity(x);
            let m = c.span_matrix(x, x, &basis);
            assert!(m.solve_vec(&c.coords(&id)).is_some());
        }
    }

    #[test]
    fn hom_basis_elements_commute() {
        let a = a3();
        for x in a.indecomposables() {
            for y in a.indecomposables() {
                for f in a.cat.hom_basis(&x, &y) {
                    a.cat.morphism(&x, &y, f.comps.clone()).unwrap();
                }
            }
        }
    }

    #[test]
    fn kernels_and_cokernels_on_a2() {
        let a = a2();
        let c = &a.cat;
        let (k, _) = c.kernel(&c.identity(&a.p1));
        assert_eq!(k.total_dim(), 0);
        let (k, kmor) = c.kernel(&a.pi);
        assert_eq!(k.dims(), a.s2.dims());
        assert!(c.is_zero_mor(&c.compose(&a.pi, &kmor)));
        let (cok, cmor) = c.cokernel(&a.iota);
        assert_eq!(cok.dims(), a.s1.dims());
        assert!(c.is_zero_mor(&c.compose(&cmor, &a.iota)));
    }

    #[test]
    fn pullback_along_identity() {
        let a = a2();
        let c = &a.cat;
        let (p, p1, p2) = c.pullback(&a.pi, &c.identity(&a.s1));
        assert!(c.find_iso(&p, &a.p1, 4096).is_some());
        assert_eq!(c.compose(&a.pi, &p1), c.compose(&c.identity(&a.s1), &p2));
        let (q, _, _) = c.pushout(&a.iota, &c.identity(&a.s2));
        assert!(c.find_iso(&q, &a.p1, 4096).is_some());
    }

    #[test]
    fn split_tests() {
        let a = a2();
        let c = &a.cat;
        let split = c.split_ses(&a.s2, &a.s1);
        let (r, s) = c.is_split(&split).unwrap();
        assert_eq!(c.compose(&r, &split.incl), c.identity(&a.s2));
        assert_eq!(c.compose(&split.proj, &s), c.identity(&a.s1));
        assert!(c.is_split(&a.ses).is_none());
        // 0 -> X -> X -> 0 -> 0
        let zero = c.zero_object();
        let deg = Ses::new(c.identity(&a.p1), c.zero_mor(&a.p1, &zero));
        assert!(c.is_conflation(&deg));
        assert!(c.is_split(&deg).is_some());
    }

    #[test]
    fn hom_exactness_on_a2() {
        let a = a2();
        let c = &a.cat;
        assert!(c.hom_exact(&a.ses, &a.p1, Side::Covariant));
        assert!(c.hom_exact(&a.ses, &a.p1, Side::Contravariant));
        assert!(!c.hom_exact(&a.ses, &a.s1, Side::Covariant));
        let split = c.split_ses(&a.s2, &a.s1);
        for g in [&a.s1, &a.s2, &a.p1] {
            assert!(c.hom_exact(&split, g, Side::Covariant));
            assert!(c.hom_exact(&split, g, Side::Contravariant));
        }
    }

    #[test]
    fn subobject_counts() {
        let a = a3();
        let subs = a.cat.enumerate_subobjects(&a.p2, 8).unwrap();
        assert_eq!(subs.len(), 3);
        let dims: Vec<Vec<usize>> = subs.iter().map(|m| m.src().dims().to_vec()).collect();
        assert!(dims.contains(&vec![0, 0, 0]));
        assert!(dims.contains(&vec![0, 0, 1]));
        assert!(dims.contains(&vec![0, 1, 1]));
        let zero = a.cat.zero_object();
        assert_eq!(a.cat.enumerate_subobjects(&zero, 8).unwrap().len(), 1);
        let b = a2();
        assert_eq!(b.cat.enumerate_subobjects(&b.s1, 8).unwrap().len(), 2);
        let big = a.cat.direct_sum_many(&[a.p1.clone(), a.p1.clone(), a.p1.clone()]);
        assert!(matches!(
            a.cat.enumerate_subobjects(&big, 8),
            Err(Error::BoundExceeded { required: 9, bound: 8 })
        ));
    }

    #[test]
    fn extension_enumeration_on_a2() {
        let a = a2();
        let c = &a.cat;
        let exts = c.enumerate_extensions(&a.s1, &a.s2, 8).unwrap();
        assert_eq!(exts.len(), 2);
        assert!(exts.iter().all(|s| c.is_ses(s)));
        assert_eq!(exts.iter().filter(|s| c.is_split(s).is_some()).count(), 1);
        assert!(exts.iter().any(|s| c.extensions_equivalent(s, &a.ses)));
        assert_eq!(c.enumerate_extensions(&a.s2, &a.s1, 8).unwrap().len(), 1);
        let zero = c.zero_object();
        let triv = c.enumerate_extensions(&zero, &a.p1, 8).unwrap();
        assert_eq!(triv.len(), 1);
        assert!(c.is_iso(&triv[0].incl));
    }

    #[test]
    fn direct_sum_identities() {
        let a = a2();
        let c = &a.cat;
        let bp = c.direct_sum(&a.p1, &a.s1);
        assert_eq!(bp.sum.dims(), &[2, 1]);
        for i in 0..2 {
            for j in 0..2 {
                let comp = c.compose(&bp.proj[i], &bp.inj[j]);
                if i == j {
                    assert!(c.is_iso(&comp) && comp == c.identity(c.target(&comp)));
                } else {
                    assert!(c.is_zero_mor(&comp));
                }
            }
        }
        let total = c.add(
            &c.compose(&bp.inj[0], &bp.proj[0]),
            &c.compose(&bp.inj[1], &bp.proj[1]),
        );
        assert_eq!(total, c.identity(&bp.sum));
        let zero = c.zero_object();
        let bz = c.direct_sum(&a.p1, &zero);
        assert_eq!(bz.sum, a.p1);
        assert_eq!(bz.inj[0], c.identity(&a.p1));
    }

    #[test]
    fn duality_reverses_sequences() {
        let a = a2();
        let c = &a.cat;
        let op = c.opposite();
        let d = c.dual_ses(&a.ses);
        assert!(op.is_ses(&d));
        assert!(op.is_split(&d).is_none());
    }

    #[test]
    fn indecomposables_of_a2_and_a3() {
        let c = RepCategory::new(Quiver::linear(2), Field::default());
        assert_eq!(c.indecomposables(2, 4096).unwrap().len(), 3);
        let c = RepCategory::new(Quiver::linear(3), Field::default());
        assert_eq!(c.indecomposables(1, 4096).unwrap().len(), 6);
    }

    #[test]
    fn relations_constrain_objects() {
        // 1 -a-> 2 -b-> 3 with b a = 0.
        let q = Quiver::linear(3)
            .with_relations(vec![Relation {
                terms: vec![RelationTerm { coef: 1, first: 0, second: 1 }],
            }])
            .unwrap();
        let c = RepCategory::new(q, Field::new(2).unwrap());
        assert!(c.object_from_ints(&[1, 1, 1], &[vec![vec![1]], vec![vec![1]]]).is_err());
        let s1 = c.simple(0);
        let s3 = c.simple(2);
        // Ext(S1, S3) vanishes without relations on A3 and stays zero here;
        // the uniserial 1-2-3 module is excluded by the relation.
        assert_eq!(c.ext_dimension(&s1, &s3), 0);
        let s2 = c.simple(1);
        assert_eq!(c.ext_dimension(&s1, &s2), 1);
    }
}
