//! Regular covers of a bouquet of circles and the action of a lifted
//! monodromy on their first homology.
//!
//! The cover associated to `alpha: F_n -> G` has one vertex per group
//! element and an edge `(g, i): g -> g * alpha(x_i)` for each vertex and
//! generator. `H_1` is free on the edges outside a spanning tree; a cycle
//! is recorded by its coefficients on those edges.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::exactla::{char_matrix, cokernel_invariants, CokernelInvariants, Matrix};
use crate::freegrp::{FreeEndo, Word};
use crate::grouphom::{Cyclic, FiniteGroup, FiniteHom};
use crate::laurent::{CanonicalForm, Laurent};
use crate::scalar::Coeff;

/// How the spanning tree is grown from the identity vertex.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SpanningOrder {
    #[default]
    BreadthFirst,
    DepthFirst,
}

/// The connected regular cover of the bouquet on `rank` circles defined by
/// a surjective homomorphism.
#[derive(Clone, Debug)]
pub struct CoverGraph<G: FiniteGroup> {
    alpha: FiniteHom<G>,
    /// Vertices in discovery order; the identity is vertex 0.
    vertices: Vec<G::Element>,
    index: HashMap<G::Element, usize>,
    /// `succ[v][i]` is the head of edge `(v, i)`.
    succ: Vec<Vec<usize>>,
    /// `pred[v][i]` is the tail of the edge `(u, i)` with head `v`.
    pred: Vec<Vec<usize>>,
    /// Edge by which each non-root vertex was discovered.
    parent: Vec<Option<(usize, usize)>>,
    /// Basis position of each non-tree edge, `None` for tree edges.
    coordinate: Vec<Vec<Option<usize>>>,
    basis: Vec<(usize, usize)>,
}

impl<G: FiniteGroup> CoverGraph<G> {
    pub fn rank(&self) -> usize {
        self.alpha.rank()
    }

    pub fn alpha(&self) -> &FiniteHom<G> {
        &self.alpha
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.len() * self.rank()
    }

    pub fn vertices(&self) -> &[G::Element] {
        &self.vertices
    }

    pub fn vertex_index(&self, g: &G::Element) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Head of edge `(v, i)`.
    pub fn target(&self, v: usize, i: usize) -> usize {
        self.succ[v][i]
    }

    /// Tree edges, as `(tail vertex, generator)`, in discovery order.
    pub fn tree_edges(&self) -> Vec<(usize, usize)> {
        let mut order: Vec<(usize, (usize, usize))> =
            self.parent.iter().enumerate().filter_map(|(v, p)| p.map(|e| (v, e))).collect();
        order.sort_by_key(|&(v, _)| v);
        order.into_iter().map(|(_, e)| e).collect()
    }

    /// Non-tree edges `(tail vertex, generator)`, ordered by tail then
    /// generator. These index the rows and columns of the lift matrix.
    pub fn homology_basis(&self) -> &[(usize, usize)] {
        &self.basis
    }

    pub fn homology_rank(&self) -> usize {
        self.basis.len()
    }

    /// Coefficients on the basis of the edge path spelling `w` from `start`,
    /// and the vertex where it ends.
    fn spell(&self, start: usize, w: &Word, out: &mut [i64]) -> usize {
        let mut v = start;
        for &(g, k) in w.blocks() {
            for _ in 0..k.unsigned_abs() {
                if k > 0 {
                    if let Some(c) = self.coordinate[v][g] {
                        out[c] += 1;
                    }
                    v = self.succ[v][g];
                } else {
                    v = self.pred[v][g];
                    if let Some(c) = self.coordinate[v][g] {
                        out[c] -= 1;
                    }
                }
            }
        }
        v
    }
}

/// Builds the cover with the default breadth-first spanning tree.
pub fn build_cover<G: FiniteGroup>(alpha: &FiniteHom<G>) -> Result<CoverGraph<G>> {
    build_cover_with(alpha, SpanningOrder::BreadthFirst)
}

/// Builds the cover, growing the tree from the identity in the given order
/// with generators tried by index.
pub fn build_cover_with<G: FiniteGroup>(alpha: &FiniteHom<G>, order: SpanningOrder) -> Result<CoverGraph<G>> {
    let group = alpha.group();
    let image = alpha.generated_subgroup_order()?;
    if image as u128 != group.order() {
        return Err(Error::NotSurjective { image, target: group.order() as u64 });
    }
    let n = alpha.rank();
    let id = group.identity();
    let mut vertices = vec![id.clone()];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut parent: Vec<Option<(usize, usize)>> = vec![None];

    match order {
        SpanningOrder::BreadthFirst => {
            let mut queue = VecDeque::from([0usize]);
            while let Some(v) = queue.pop_front() {
                for i in 0..n {
                    let h = group.multiply(&vertices[v], &alpha.images()[i]);
                    if !index.contains_key(&h) {
                        index.insert(h.clone(), vertices.len());
                        queue.push_back(vertices.len());
                        vertices.push(h);
                        parent.push(Some((v, i)));
                    }
                }
            }
        }
        SpanningOrder::DepthFirst => {
            // stack of (vertex, next generator to try)
            let mut stack = vec![(0usize, 0usize)];
            while let Some(top) = stack.last_mut() {
                let (v, i) = *top;
                if i == n {
                    stack.pop();
                    continue;
                }
                top.1 += 1;
                let h = group.multiply(&vertices[v], &alpha.images()[i]);
                if !index.contains_key(&h) {
                    let w = vertices.len();
                    index.insert(h.clone(), w);
                    vertices.push(h);
                    parent.push(Some((v, i)));
                    stack.push((w, 0));
                }
            }
        }
    }

    let count = vertices.len();
    let mut succ = vec![vec![0; n]; count];
    let mut pred = vec![vec![0; n]; count];
    for (v, g) in vertices.iter().enumerate() {
        for i in 0..n {
            let w = index[&group.multiply(g, &alpha.images()[i])];
            succ[v][i] = w;
            pred[w][i] = v;
        }
    }
    let mut is_tree = vec![vec![false; n]; count];
    for &(v, i) in parent.iter().flatten() {
        is_tree[v][i] = true;
    }
    let mut coordinate = vec![vec![None; n]; count];
    let mut basis = Vec::new();
    for v in 0..count {
        for i in 0..n {
            if !is_tree[v][i] {
                coordinate[v][i] = Some(basis.len());
                basis.push((v, i));
            }
        }
    }
    Ok(CoverGraph { alpha: alpha.clone(), vertices, index, succ, pred, parent, coordinate, basis })
}

/// Matrix of the lift of `f` fixing the identity vertex, on the non-tree
/// edge basis of `H_1`. Column `k` is the image of basis cycle `k`.
pub fn lift_action_matrix<G: FiniteGroup, T: Coeff>(cover: &CoverGraph<G>, f: &FreeEndo) -> Result<Matrix<T>> {
    if let Some(generator) = f.first_incompatible(cover.alpha())? {
        return Err(Error::Incompatible { generator });
    }
    let n = cover.rank();
    let m = cover.homology_rank();
    let count = cover.vertex_count();
    // edge[v][i]: image of edge (v, i) as a path, in basis coordinates
    let mut edge = vec![vec![Vec::new(); n]; count];
    for (v, row) in edge.iter_mut().enumerate() {
        for (i, slot) in row.iter_mut().enumerate() {
            let mut coords = vec![0i64; m];
            let end = cover.spell(v, f.image(i), &mut coords);
            debug_assert_eq!(end, cover.target(v, i));
            *slot = coords;
        }
    }
    // path[v]: image of the tree path from the identity to v
    let mut path = vec![vec![0i64; m]; count];
    for v in 1..count {
        let (u, i) = cover.parent[v].expect("non-root vertices have a tree parent");
        debug_assert!(u < v);
        path[v] = path[u].iter().zip(&edge[u][i]).map(|(a, b)| a + b).collect();
    }
    let mut h = Matrix::zeros(m, m);
    for (k, &(v, i)) in cover.homology_basis().iter().enumerate() {
        let w = cover.target(v, i);
        for r in 0..m {
            let x = path[v][r] + edge[v][i][r] - path[w][r];
            if x != 0 {
                h[(r, k)] = T::from_int(x);
            }
        }
    }
    Ok(h)
}

/// The twisted Alexander data of a fibred knot from its monodromy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedInvariants<T: Coeff> {
    pub group_order: u64,
    /// Action of `s` on `H_1` of the cover.
    pub h_matrix: Matrix<T>,
    /// `sI - H`.
    pub presentation: Matrix<Laurent<T>>,
    pub delta: CanonicalForm<T>,
    /// Generators of the elementary ideal; the single entry is `delta`.
    pub ideal_generators: Vec<Laurent<T>>,
}

/// `H = lift(f^d)` over the cover of `alpha`, its presentation `sI - H` and
/// `det(sI - H)`.
pub fn twisted_invariants<G: FiniteGroup, T: Coeff>(
    f: &FreeEndo,
    d: u32,
    alpha: &FiniteHom<G>,
) -> Result<TwistedInvariants<T>> {
    twisted_invariants_with(f, d, alpha, SpanningOrder::BreadthFirst)
}

pub fn twisted_invariants_with<G: FiniteGroup, T: Coeff>(
    f: &FreeEndo,
    d: u32,
    alpha: &FiniteHom<G>,
    order: SpanningOrder,
) -> Result<TwistedInvariants<T>> {
    if d == 0 {
        return Err(Error::InvalidArgument("d must be at least 1".into()));
    }
    let fd = f.power(d)?;
    if let Some(generator) = fd.first_incompatible(alpha)? {
        return Err(Error::Incompatible { generator });
    }
    let cover = build_cover_with(alpha, order)?;
    let h: Matrix<T> = lift_action_matrix(&cover, &fd)?;
    let delta = characteristic_polynomial(&h).canonicalize();
    Ok(TwistedInvariants {
        group_order: cover.vertex_count() as u64,
        presentation: char_matrix(&h),
        ideal_generators: vec![delta.as_poly().clone()],
        h_matrix: h,
        delta,
    })
}

/// `det(sI - A)` by the Faddeev-LeVerrier recurrence; the divisions by `k`
/// are exact over the integers.
pub fn characteristic_polynomial<T: Coeff>(a: &Matrix<T>) -> Laurent<T> {
    assert!(a.is_square(), "characteristic polynomial of a non-square matrix");
    let n = a.rows();
    let mut coeffs = vec![T::zero(); n + 1];
    coeffs[n] = T::one();
    let mut m: Matrix<T> = Matrix::zeros(n, n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = a.matmul(&m);
        for i in 0..n {
            next[(i, i)] = next[(i, i)].clone() + coeffs[n - k + 1].clone();
        }
        let am = a.matmul(&next);
        let trace = (0..n).fold(T::zero(), |acc, i| acc + am[(i, i)].clone());
        coeffs[n - k] = -(trace / T::from_int(k as i64));
        m = next;
    }
    Laurent::from_coeffs(0, coeffs)
}

/// `H_1` of the `d`-fold cyclic cover of the sphere branched along the
/// knot, as `coker(T^d - I)` for `T` the abelianized monodromy.
pub fn branched_cover_homology_from_monodromy<T: Coeff>(f: &FreeEndo, d: u32) -> Result<CokernelInvariants<T>> {
    if d == 0 {
        return Err(Error::InvalidArgument("d must be at least 1".into()));
    }
    let t: Matrix<T> = f.abelianization_matrix();
    let rel = t.pow(d).sub(&Matrix::identity(f.rank()));
    Ok(cokernel_invariants(&rel))
}

/// All surjections `F_n -> Z/r` compatible with `f^d`, in lexicographic
/// order of the generator images.
pub fn compatible_cyclic_homs(f: &FreeEndo, d: u32, r: u64) -> Result<Vec<FiniteHom<Cyclic>>> {
    let group = Cyclic::new(r)?;
    let n = f.rank();
    let count = (r as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if count > crate::grouphom::MAX_CLOSURE_ORDER {
        return Err(Error::SizeCap { what: "cyclic assignments", count, cap: crate::grouphom::MAX_CLOSURE_ORDER });
    }
    let t: Matrix<i128> = f.power(d)?.abelianization_matrix();
    let r_i = r as i128;
    let mut out = Vec::new();
    let mut images = vec![0u64; n];
    loop {
        let surjective = images.iter().fold(r, |g, &a| num_integer::gcd(g, a)) == 1;
        let compatible = (0..n).all(|j| {
            let s: i128 = (0..n).map(|i| t[(i, j)] * images[i] as i128).sum();
            s.rem_euclid(r_i) == images[j] as i128
        });
        if surjective && compatible {
            out.push(FiniteHom::new(group, images.clone())?);
        }
        // odometer, last generator fastest
        let Some(pos) = (0..n).rev().find(|&i| images[i] + 1 < r) else {
            break;
        };
        images[pos] += 1;
        images[pos + 1..].iter_mut().for_each(|a| *a = 0);
    }
    Ok(out)
}
