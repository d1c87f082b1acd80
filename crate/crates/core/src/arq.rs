//! The periodic quiver `Î`, the bijection `Φ: R → Î`, height functions,
//! the Nakayama involution, the positive region `Δ^Π` with its reduced words
//! for `w₀`, and the mesh presentation of the root lattice.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::coxeter::{
    beta_family, elementary_reflection, orientation_of, BetaFamily, CoxeterContext,
};
use crate::error::{cross_check, Error, Result};
use crate::linalg::{smith_invariant_factors, IntMatrix};
use crate::rootsys::{
    involution_from_longest, longest_element, weyl_length, DynkinType, RootId, RootSystem,
    SimpleSystem, WeylElement,
};

/// A vertex `(i, n)` of `Î`; `n` is a residue mod `2h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IhatVertex {
    pub i: usize,
    pub n: usize,
}

impl fmt::Display for IhatVertex {
    /// `i:n` with a 1-based vertex label.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.i + 1, self.n)
    }
}

/// `Î = {(i, n) ∈ I × ℤ_{2h} : p(i) + n even}` with arrows `(i,n) → (j,n+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IhatQuiver {
    dynkin: DynkinType,
    h: usize,
    parity: Vec<usize>,
    neighbors: Vec<Vec<usize>>,
}

/// Builds `Î` with parity `p(i) = d(1, i) mod 2`.
pub fn build_ihat(rs: &RootSystem) -> IhatQuiver {
    IhatQuiver {
        dynkin: rs.dynkin(),
        h: rs.coxeter_number(),
        parity: rs.distance_from_first().iter().map(|d| d % 2).collect(),
        neighbors: (0..rs.rank()).map(|i| rs.neighbors(i).to_vec()).collect(),
    }
}

impl IhatQuiver {
    pub fn dynkin(&self) -> DynkinType {
        self.dynkin
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn period(&self) -> usize {
        2 * self.h
    }

    pub fn rank(&self) -> usize {
        self.parity.len()
    }

    pub fn parity(&self, i: usize) -> usize {
        self.parity[i]
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn len(&self) -> usize {
        self.rank() * self.h
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, v: IhatVertex) -> bool {
        v.i < self.rank() && v.n < self.period() && (self.parity[v.i] + v.n).is_multiple_of(2)
    }

    /// Vertex `(i, n)` for any integer level `n`, reduced mod `2h`.
    pub fn at(&self, i: usize, n: i64) -> IhatVertex {
        IhatVertex {
            i,
            n: n.rem_euclid(self.period() as i64) as usize,
        }
    }

    /// Dense index `i·h + n/2`.
    pub fn index_of(&self, v: IhatVertex) -> usize {
        v.i * self.h + v.n / 2
    }

    pub fn vertex(&self, index: usize) -> IhatVertex {
        let i = index / self.h;
        let half = index % self.h;
        IhatVertex {
            i,
            n: 2 * half + self.parity[i],
        }
    }

    pub fn vertices(&self) -> Vec<IhatVertex> {
        (0..self.len()).map(|k| self.vertex(k)).collect()
    }

    pub fn successors(&self, v: IhatVertex) -> Vec<IhatVertex> {
        self.neighbors[v.i]
            .iter()
            .map(|&j| self.at(j, v.n as i64 + 1))
            .collect()
    }

    pub fn predecessors(&self, v: IhatVertex) -> Vec<IhatVertex> {
        self.neighbors[v.i]
            .iter()
            .map(|&j| self.at(j, v.n as i64 - 1))
            .collect()
    }

    pub fn edges(&self) -> Vec<(IhatVertex, IhatVertex)> {
        self.vertices()
            .into_iter()
            .flat_map(|v| self.successors(v).into_iter().map(move |w| (v, w)))
            .collect()
    }

    /// `τ(i, n) = (i, n + 2)`.
    pub fn tau(&self, v: IhatVertex) -> IhatVertex {
        self.tau_pow(v, 1)
    }

    pub fn tau_pow(&self, v: IhatVertex, k: i64) -> IhatVertex {
        self.at(v.i, v.n as i64 + 2 * k)
    }
}

/// A map `I → ℤ_{2h}` changing by `±1` along edges, with `h(i) ≡ p(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HeightFunction {
    values: Vec<usize>,
    period: usize,
}

impl fmt::Display for HeightFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl HeightFunction {
    pub fn new(ihat: &IhatQuiver, values: Vec<usize>) -> Result<Self> {
        let period = ihat.period();
        if values.len() != ihat.rank() {
            return Err(Error::DimensionMismatch {
                expected: ihat.rank(),
                got: values.len(),
            });
        }
        for (i, &v) in values.iter().enumerate() {
            if v >= period {
                return Err(Error::InvalidHeightFunction(format!(
                    "value {v} at vertex {} is not below {period}",
                    i + 1
                )));
            }
            if !(v + ihat.parity(i)).is_multiple_of(2) {
                return Err(Error::InvalidHeightFunction(format!(
                    "value {v} at vertex {} has the wrong parity",
                    i + 1
                )));
            }
            for &j in ihat.neighbors(i) {
                let d = (values[j] + period - v) % period;
                if d != 1 && d != period - 1 {
                    return Err(Error::InvalidHeightFunction(format!(
                        "values at adjacent vertices {} and {} differ by {d}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(HeightFunction { values, period })
    }

    /// Reduces integer heights mod `2h`.
    pub fn from_levels(ihat: &IhatQuiver, levels: &[i64]) -> Result<Self> {
        let p = ihat.period() as i64;
        Self::new(
            ihat,
            levels.iter().map(|&l| l.rem_euclid(p) as usize).collect(),
        )
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn get(&self, i: usize) -> usize {
        self.values[i]
    }

    /// Integer lift along the tree starting from `values[0]`.
    pub fn lift(&self, ihat: &IhatQuiver) -> Vec<i64> {
        let r = self.values.len();
        let mut out = vec![i64::MIN; r];
        out[0] = self.values[0] as i64;
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for &j in ihat.neighbors(i) {
                if out[j] == i64::MIN {
                    let up = (self.values[i] + 1) % self.period == self.values[j];
                    out[j] = out[i] + if up { 1 } else { -1 };
                    queue.push_back(j);
                }
            }
        }
        out
    }

    /// `h + 2k`, the height function of `C^k(Π)`.
    pub fn shifted(&self, k: i64) -> Self {
        let p = self.period as i64;
        HeightFunction {
            values: self
                .values
                .iter()
                .map(|&v| (v as i64 + 2 * k).rem_euclid(p) as usize)
                .collect(),
            period: self.period,
        }
    }

    /// The slice `{(i, h(i))}`.
    pub fn slice(&self) -> Vec<IhatVertex> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &n)| IhatVertex { i, n })
            .collect()
    }
}

/// All `h·2^{r−1}` height functions.
pub fn all_height_functions(ihat: &IhatQuiver) -> Vec<HeightFunction> {
    let r = ihat.rank();
    // A BFS order of the tree; each non-root vertex has one parent edge.
    let mut order = vec![(0usize, usize::MAX)];
    let mut seen = vec![false; r];
    seen[0] = true;
    let mut k = 0;
    while k < order.len() {
        let i = order[k].0;
        for &j in ihat.neighbors(i) {
            if !seen[j] {
                seen[j] = true;
                order.push((j, i));
            }
        }
        k += 1;
    }
    let mut out = Vec::new();
    for start in (0..ihat.period()).step_by(2) {
        for mask in 0..1usize << (r - 1) {
            let mut levels = vec![0i64; r];
            levels[0] = start as i64;
            for (k, &(j, parent)) in order.iter().enumerate().skip(1) {
                levels[j] = levels[parent] + if mask >> (k - 1) & 1 == 0 { 1 } else { -1 };
            }
            out.push(HeightFunction::from_levels(ihat, &levels).expect("tree walk by ±1"));
        }
    }
    out
}

/// Whether a vertex set is a slice: one vertex per `τ`-orbit, adjacent
/// orbits joined by an arrow.
pub fn is_slice(ihat: &IhatQuiver, vertices: &[IhatVertex]) -> bool {
    let mut by_line = vec![None; ihat.rank()];
    for v in vertices {
        if !ihat.contains(*v) || by_line[v.i].replace(v.n).is_some() {
            return false;
        }
    }
    let Some(levels) = by_line.into_iter().collect::<Option<Vec<usize>>>() else {
        return false;
    };
    HeightFunction::new(ihat, levels).is_ok()
}

/// The bijection `Φ: R → Î`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiMap {
    ihat: IhatQuiver,
    forward: Vec<IhatVertex>,
    backward: Vec<RootId>,
    anchor: IhatVertex,
}

impl PhiMap {
    pub fn ihat(&self) -> &IhatQuiver {
        &self.ihat
    }

    pub fn apply(&self, root: RootId) -> IhatVertex {
        self.forward[root]
    }

    pub fn inverse(&self, v: IhatVertex) -> RootId {
        self.backward[self.ihat.index_of(v)]
    }

    pub fn forward(&self) -> &[IhatVertex] {
        &self.forward
    }

    /// Image of `β_1` of the canonical compatible system.
    pub fn anchor(&self) -> IhatVertex {
        self.anchor
    }
}

/// Integer heights `H(i)` with `Φ(β_i^Π) = (i, H(i) mod 2h)`, together with
/// the family `β^Π`.
fn lifted_heights(ctx: &CoxeterContext, pi: &SimpleSystem) -> Result<(Vec<i64>, BetaFamily)> {
    let r = ctx.rank();
    let family = beta_family(ctx, pi)?;
    let omega = orientation_of(ctx, pi)?;
    let canonical = ctx.canonical_simple_system();
    let anchor_root = beta_family(ctx, canonical)?.get(0);
    let k = (0..ctx.h())
        .find(|&k| ctx.power_apply(k as i64, anchor_root) == family.get(0))
        .ok_or_else(|| {
            cross_check(
                "orbit of beta_1",
                "β_1 does not lie in the C-orbit of the canonical β_1",
            )
        })?;
    let mut levels = vec![i64::MIN; r];
    levels[0] = 2 * k as i64;
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for j in omega.successors(i) {
            if levels[j] == i64::MIN {
                levels[j] = levels[i] + 1;
                queue.push_back(j);
            }
        }
        for j in omega.predecessors(i) {
            if levels[j] == i64::MIN {
                levels[j] = levels[i] - 1;
                queue.push_back(j);
            }
        }
    }
    Ok((levels, family))
}

/// `Φ^Π`, anchored so that `β_1` of the canonical compatible system goes to
/// `(1, 0)`, and extended by `Φ(Cβ) = τΦ(β)`.
pub fn build_phi(ctx: &CoxeterContext, pi: &SimpleSystem) -> Result<PhiMap> {
    let rs = ctx.root_system();
    let ihat = build_ihat(rs);
    let (levels, family) = lifted_heights(ctx, pi)?;
    let mut forward = vec![None; rs.len()];
    let mut backward = vec![usize::MAX; ihat.len()];
    for i in 0..ctx.rank() {
        let mut root = family.get(i);
        for m in 0..ctx.h() as i64 {
            let v = ihat.at(i, levels[i] + 2 * m);
            if !ihat.contains(v) {
                return Err(cross_check("phi parity", format!("{v} is not in Î")));
            }
            let slot = ihat.index_of(v);
            if forward[root].is_some() || backward[slot] != usize::MAX {
                return Err(cross_check("phi bijectivity", format!("collision at {v}")));
            }
            forward[root] = Some(v);
            backward[slot] = root;
            root = ctx.element().apply(root);
        }
    }
    let forward: Vec<IhatVertex> = forward
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| cross_check("phi bijectivity", "some root has no image"))?;
    for (root, &v) in forward.iter().enumerate() {
        if forward[ctx.element().apply(root)] != ihat.tau(v) {
            return Err(cross_check("phi equivariance", format!("fails at root {root}")));
        }
    }
    Ok(PhiMap {
        anchor: IhatVertex { i: 0, n: 0 },
        ihat,
        forward,
        backward,
    })
}

/// `h^Π(i)`, the level of `Φ(β_i^Π)`.
pub fn height_of(ctx: &CoxeterContext, pi: &SimpleSystem) -> Result<HeightFunction> {
    let (levels, _) = lifted_heights(ctx, pi)?;
    HeightFunction::from_levels(&build_ihat(ctx.root_system()), &levels)
}

/// The unique compatible simple system with height function `target`.
///
/// Starting from the seed, the vertex of least height among those still
/// below the target is always a source, and reflecting there raises it by 2.
pub fn simple_system_from_height(
    ctx: &CoxeterContext,
    target: &HeightFunction,
) -> Result<SimpleSystem> {
    let ihat = build_ihat(ctx.root_system());
    if target.values.len() != ihat.rank() || target.period != ihat.period() {
        return Err(Error::InvalidHeightFunction(
            "height function belongs to another quiver".into(),
        ));
    }
    let target_checked = HeightFunction::new(&ihat, target.values.clone())?;
    let mut pi = ctx.seed().clone();
    let (mut current, _) = lifted_heights(ctx, &pi)?;
    let mut goal = target_checked.lift(&ihat);
    let period = ihat.period() as i64;
    let deficit = current
        .iter()
        .zip(&goal)
        .map(|(s, t)| s - t)
        .max()
        .unwrap_or(0)
        .max(0);
    let shift = (deficit + period - 1) / period * period;
    goal.iter_mut().for_each(|t| *t += shift);

    loop {
        let Some(i) = (0..ihat.rank())
            .filter(|&i| current[i] < goal[i])
            .min_by_key(|&i| (current[i], i))
        else {
            break;
        };
        if !orientation_of(ctx, &pi)?.is_source(i) {
            return Err(cross_check(
                "height ascent",
                format!("vertex {} is not a source", i + 1),
            ));
        }
        pi = elementary_reflection(ctx, &pi, i)?;
        current[i] += 2;
    }
    let reached = height_of(ctx, &pi)?;
    if reached != target_checked {
        return Err(cross_check(
            "height round trip",
            format!("reached {reached}, wanted {target_checked}"),
        ));
    }
    Ok(pi)
}

/// `−Π`, indexed as `w₀(Π)` so that `α_i^{−Π} = −α_ǐ^Π`.
pub fn negative_system(ctx: &CoxeterContext, pi: &SimpleSystem) -> SimpleSystem {
    let rs = ctx.root_system();
    pi.apply(rs, &longest_element(rs, pi))
}

/// `ν_Î(i, k) = (ǐ, k + h)`.
pub fn nakayama_ihat(ihat: &IhatQuiver, involution: &[usize], v: IhatVertex) -> IhatVertex {
    ihat.at(involution[v.i], v.n as i64 + ihat.h() as i64)
}

/// `i ↦ ǐ` from `−α_i = w₀(α_ǐ)`, cross-checked against `−β_i^Π = β_ǐ^{−Π}`.
pub fn check_involution(ctx: &CoxeterContext, pi: &SimpleSystem) -> Result<Vec<usize>> {
    let rs = ctx.root_system();
    let r = rs.rank();
    let w0 = longest_element(rs, pi);
    let inv = involution_from_longest(rs, pi, &w0);
    let neg = pi.apply(rs, &w0);
    let beta = beta_family(ctx, pi)?;
    let beta_neg = beta_family(ctx, &neg)?;
    for i in 0..r {
        let target = rs.negate(beta.get(i));
        let j = (0..r).find(|&j| beta_neg.get(j) == target).ok_or_else(|| {
            cross_check(
                "involution",
                format!("−β_{} is not in the family of −Π", i + 1),
            )
        })?;
        if j != inv[i] {
            return Err(cross_check(
                "involution",
                format!("w₀ gives {} ↦ {}, β gives {}", i + 1, inv[i] + 1, j + 1),
            ));
        }
    }
    Ok(inv)
}

/// One vertex of `Δ^Π` with its unwrapped level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct DeltaVertex {
    pub level: i64,
    pub i: usize,
    pub vertex: IhatVertex,
}

/// `Δ^Π = {(i, n) : h^Π(i) ≤ n < h^{−Π}(i)}`, listed by `(level, i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaRegion {
    entries: Vec<DeltaVertex>,
}

impl DeltaRegion {
    pub fn entries(&self) -> &[DeltaVertex] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn vertices(&self) -> Vec<IhatVertex> {
        self.entries.iter().map(|e| e.vertex).collect()
    }

    /// Arrows of `Î` inside the region, as index pairs into `entries`.
    pub fn arrows(&self, ihat: &IhatQuiver) -> Vec<(usize, usize)> {
        let pos: HashMap<(usize, i64), usize> = self
            .entries
            .iter()
            .enumerate()
            .map(|(k, e)| ((e.i, e.level), k))
            .collect();
        let mut out = Vec::new();
        for (k, e) in self.entries.iter().enumerate() {
            for &j in ihat.neighbors(e.i) {
                if let Some(&t) = pos.get(&(j, e.level + 1)) {
                    out.push((k, t));
                }
            }
        }
        out
    }

    /// The word read off along `order`, a permutation of `entries`.
    pub fn word(&self, order: &[usize]) -> Vec<usize> {
        order.iter().map(|&k| self.entries[k].i).collect()
    }
}

pub fn delta_region(ctx: &CoxeterContext, pi: &SimpleSystem) -> Result<DeltaRegion> {
    let rs = ctx.root_system();
    let ihat = build_ihat(rs);
    let lower = height_of(ctx, pi)?;
    let upper = height_of(ctx, &negative_system(ctx, pi))?;
    let levels = lower.lift(&ihat);
    let mut entries = Vec::with_capacity(rs.num_positive());
    for i in 0..ihat.rank() {
        let mut m = 0;
        loop {
            let v = ihat.at(i, levels[i] + 2 * m);
            if v.n == upper.get(i) {
                break;
            }
            if m as usize >= ihat.h() {
                return Err(cross_check(
                    "delta region",
                    format!("line {} never reaches the upper slice", i + 1),
                ));
            }
            entries.push(DeltaVertex {
                level: levels[i] + 2 * m,
                i,
                vertex: v,
            });
            m += 1;
        }
    }
    entries.sort_unstable();
    if entries.len() != rs.num_positive() {
        return Err(cross_check(
            "delta size",
            format!("{} vertices, expected {}", entries.len(), rs.num_positive()),
        ));
    }
    let phi = build_phi(ctx, pi)?;
    let images: BTreeSet<IhatVertex> = pi
        .positive_roots(rs)
        .into_iter()
        .map(|a| phi.apply(a))
        .collect();
    let region: BTreeSet<IhatVertex> = entries.iter().map(|e| e.vertex).collect();
    if images != region {
        return Err(cross_check("delta region", "Δ^Π differs from Φ(R₊^Π)"));
    }
    Ok(DeltaRegion { entries })
}

/// Checks that `word` is a reduced word for `w₀^Π`.
pub fn check_w0_word(ctx: &CoxeterContext, pi: &SimpleSystem, word: &[usize]) -> Result<()> {
    let rs = ctx.root_system();
    let w = WeylElement::from_word(rs, pi, word);
    if word.len() != rs.num_positive() || weyl_length(rs, pi, &w) != word.len() {
        return Err(cross_check("w0 word", "word is not reduced of length |R₊|"));
    }
    if w != longest_element(rs, pi) {
        return Err(cross_check("w0 word", "word does not evaluate to w₀"));
    }
    let image: BTreeSet<RootId> = pi.apply(rs, &w).base().iter().copied().collect();
    let negated: BTreeSet<RootId> = pi.base().iter().map(|&a| rs.negate(a)).collect();
    if image != negated {
        return Err(cross_check("w0 word", "word does not send Π to −Π"));
    }
    Ok(())
}

/// A reduced word for `w₀^Π` read off `Δ^Π` in order of `(level, vertex)`.
pub fn w0_word(ctx: &CoxeterContext, pi: &SimpleSystem) -> Result<Vec<usize>> {
    let delta = delta_region(ctx, pi)?;
    let order: Vec<usize> = (0..delta.len()).collect();
    let word = delta.word(&order);
    check_w0_word(ctx, pi, &word)?;
    Ok(word)
}

/// Integer coordinates in the basis of a reference slice.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeElement {
    pub coords: Vec<i64>,
}

/// The lattice `ℤ^Î / (mesh relations)` with every vertex expressed in the
/// basis `{(i, h_ref(i))}`.
#[derive(Debug, Clone)]
pub struct MeshLattice {
    ihat: IhatQuiver,
    reference: HeightFunction,
    table: Vec<Vec<i64>>,
}

impl MeshLattice {
    /// Knits forward from the reference slice over one full period using
    /// `(i, n+2) = Σ_j (j, n+1) − (i, n)` and checks that it closes up.
    pub fn new(ihat: &IhatQuiver, reference: &HeightFunction) -> Result<Self> {
        let r = ihat.rank();
        let period = ihat.period() as i64;
        let base = reference.lift(ihat);
        let mut known: HashMap<(usize, i64), Vec<i64>> = HashMap::new();
        let mut order: Vec<(i64, usize)> = Vec::new();
        for (i, &b) in base.iter().enumerate() {
            let mut unit = vec![0; r];
            unit[i] = 1;
            known.insert((i, b), unit);
            order.extend((1..=ihat.h() as i64).map(|m| (b + 2 * m, i)));
        }
        order.sort_unstable();
        for (level, i) in order {
            let mut v: Vec<i64> = known[&(i, level - 2)].iter().map(|x| -x).collect();
            for &j in ihat.neighbors(i) {
                let w = known.get(&(j, level - 1)).ok_or_else(|| Error::Wraparound {
                    row: format!("line {}", i + 1),
                    detail: format!("level {} of line {} not reached", level - 1, j + 1),
                })?;
                for (x, y) in v.iter_mut().zip(w) {
                    *x = x.checked_add(*y).ok_or(Error::Overflow("lattice knitting"))?;
                }
            }
            known.insert((i, level), v);
        }
        for (i, &b) in base.iter().enumerate() {
            if known[&(i, b + period)] != known[&(i, b)] {
                return Err(Error::Wraparound {
                    row: format!("line {}", i + 1),
                    detail: "knitting over one period does not return to the slice".into(),
                });
            }
        }
        let mut table = vec![Vec::new(); ihat.len()];
        for (&(i, level), v) in &known {
            if level < base[i] + period {
                table[ihat.index_of(ihat.at(i, level))] = v.clone();
            }
        }
        Ok(MeshLattice {
            ihat: ihat.clone(),
            reference: reference.clone(),
            table,
        })
    }

    pub fn reference(&self) -> &HeightFunction {
        &self.reference
    }

    pub fn coords_of(&self, v: IhatVertex) -> &[i64] {
        &self.table[self.ihat.index_of(v)]
    }

    /// Rewrites a formal combination of vertices in the slice basis.
    pub fn reduce(&self, combination: &[(IhatVertex, i64)]) -> LatticeElement {
        let mut coords = vec![0; self.ihat.rank()];
        for &(v, c) in combination {
            for (x, y) in coords.iter_mut().zip(self.coords_of(v)) {
                *x += c * y;
            }
        }
        LatticeElement { coords }
    }
}

/// `lattice_reduce` relative to the reference slice `reference`.
pub fn lattice_reduce(
    ihat: &IhatQuiver,
    reference: &HeightFunction,
    combination: &[(IhatVertex, i64)],
) -> Result<LatticeElement> {
    Ok(MeshLattice::new(ihat, reference)?.reduce(combination))
}

/// The mesh relation `(i,n) − Σ_j (j,n+1) + (i,n+2)` at `v`.
pub fn mesh_relation(ihat: &IhatQuiver, v: IhatVertex) -> Vec<(IhatVertex, i64)> {
    let mut out = vec![(v, 1), (ihat.tau(v), 1)];
    out.extend(ihat.successors(v).into_iter().map(|w| (w, -1)));
    out
}

/// One row per mesh relation, one column per vertex.
pub fn relation_matrix(ihat: &IhatQuiver) -> IntMatrix {
    let n = ihat.len();
    let mut rows = vec![vec![0i64; n]; n];
    for (k, v) in ihat.vertices().into_iter().enumerate() {
        for (w, c) in mesh_relation(ihat, v) {
            rows[k][ihat.index_of(w)] += c;
        }
    }
    IntMatrix::from_rows(&rows)
}

/// `(free rank, torsion)` of `ℤ^Î / J`, via Smith normal form.
pub fn presentation_structure(ihat: &IhatQuiver) -> Result<(usize, Vec<i64>)> {
    let factors = smith_invariant_factors(&relation_matrix(ihat))?;
    let nonzero: Vec<i64> = factors.iter().copied().filter(|&d| d != 0).collect();
    let torsion = nonzero.iter().copied().filter(|&d| d.abs() != 1).collect();
    Ok((ihat.len() - nonzero.len(), torsion))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{coxeter_from_orientation, coxeter_from_word, enumerate_compatible, Orientation};
    use crate::par::Execution;
    use std::sync::Arc;

    fn standard(name: &str) -> CoxeterContext {
        let rs = Arc::new(RootSystem::new(name.parse().unwrap()));
        let pi = SimpleSystem::reference(&rs);
        let word: Vec<usize> = (0..rs.rank()).collect();
        coxeter_from_word(&rs, &pi, &word).unwrap()
    }

    fn bipartite(name: &str) -> CoxeterContext {
        let rs = Arc::new(RootSystem::new(name.parse().unwrap()));
        let pi = SimpleSystem::reference(&rs);
        coxeter_from_orientation(&rs, &pi, &Orientation::bipartite(&rs, true)).unwrap()
    }

    #[test]
    fn ihat_shapes() {
        let a1 = build_ihat(&RootSystem::new("A1".parse().unwrap()));
        assert_eq!(a1.h(), 2);
        assert_eq!(
            a1.vertices(),
            vec![IhatVertex { i: 0, n: 0 }, IhatVertex { i: 0, n: 2 }]
        );
        assert!(a1.edges().is_empty());

        let d5 = build_ihat(&RootSystem::new("D5".parse().unwrap()));
        assert_eq!(d5.len(), 40);

        let a2 = build_ihat(&RootSystem::new("A2".parse().unwrap()));
        assert_eq!(a2.len(), 6);
        for v in a2.vertices() {
            assert_eq!(a2.successors(v).len(), 1);
            assert_eq!(a2.predecessors(v).len(), 1);
        }

        for name in ["A4", "D4", "E6", "E8"] {
            let rs = RootSystem::new(name.parse().unwrap());
            let q = build_ihat(&rs);
            assert_eq!(q.len(), rs.rank() * rs.coxeter_number());
            for (k, v) in q.vertices().into_iter().enumerate() {
                assert!(q.contains(v));
                assert_eq!(q.index_of(v), k);
                assert_eq!(q.tau_pow(v, q.h() as i64), v);
                for w in q.successors(v) {
                    assert!(q.contains(w));
                    assert!(q.successors(q.tau(v)).contains(&q.tau(w)));
                }
                assert_eq!(q.successors(v).len(), rs.neighbors(v.i).len());
            }
        }
    }

    #[test]
    fn phi_is_equivariant_and_independent() {
        for name in ["A2", "A3", "A4", "D4"] {
            let ctx = standard(name);
            let reference = build_phi(&ctx, ctx.seed()).unwrap();
            for pi in enumerate_compatible(&ctx, Execution::default()).unwrap() {
                let phi = build_phi(&ctx, &pi).unwrap();
                assert_eq!(phi, reference, "{name}");
            }
            let rs = ctx.root_system();
            for a in 0..rs.len() {
                assert_eq!(reference.inverse(reference.apply(a)), a);
            }
        }
    }

    #[test]
    fn phi_anchor() {
        let ctx = standard("A3");
        let canon = ctx.canonical_simple_system().clone();
        let phi = build_phi(&ctx, &canon).unwrap();
        let beta = beta_family(&ctx, &canon).unwrap();
        assert_eq!(phi.apply(beta.get(0)), IhatVertex { i: 0, n: 0 });
    }

    #[test]
    fn phi_of_negative_is_nakayama() {
        for name in ["A2", "A4", "A5", "D4", "D5", "E6", "E7"] {
            let ctx = standard(name);
            let rs = ctx.root_system();
            let phi = build_phi(&ctx, ctx.seed()).unwrap();
            let inv = check_involution(&ctx, ctx.seed()).unwrap();
            assert_eq!(inv, rs.opposition_involution());
            for a in 0..rs.len() {
                assert_eq!(
                    phi.apply(rs.negate(a)),
                    nakayama_ihat(phi.ihat(), &inv, phi.apply(a)),
                    "{name}"
                );
            }
        }
    }

    #[test]
    fn nakayama_examples() {
        let d4 = standard("D4");
        let inv = check_involution(&d4, d4.seed()).unwrap();
        let q = build_ihat(d4.root_system());
        for v in q.vertices() {
            assert_eq!(nakayama_ihat(&q, &inv, v), q.at(v.i, v.n as i64 + 6));
        }
        let a2 = standard("A2");
        let inv = check_involution(&a2, a2.seed()).unwrap();
        let q = build_ihat(a2.root_system());
        assert_eq!(nakayama_ihat(&q, &inv, IhatVertex { i: 0, n: 0 }), IhatVertex { i: 1, n: 3 });
        for name in ["A3", "A4", "D5", "E6", "E7"] {
            let ctx = standard(name);
            let inv = check_involution(&ctx, ctx.seed()).unwrap();
            let q = build_ihat(ctx.root_system());
            for v in q.vertices() {
                let w = nakayama_ihat(&q, &inv, v);
                assert!(q.contains(w));
                assert_eq!(nakayama_ihat(&q, &inv, w), v);
                assert_eq!(nakayama_ihat(&q, &inv, q.tau(v)), q.tau(w));
            }
        }
        let a4 = standard("A4");
        assert_eq!(check_involution(&a4, a4.seed()).unwrap(), vec![3, 2, 1, 0]);
        let e7 = standard("E7");
        assert_eq!(check_involution(&e7, e7.seed()).unwrap(), (0..7).collect::<Vec<_>>());
        let d5 = standard("D5");
        assert_eq!(check_involution(&d5, d5.seed()).unwrap(), vec![0, 1, 2, 4, 3]);
    }

    #[test]
    fn height_function_examples() {
        let ctx = bipartite("D5");
        let hf = height_of(&ctx, ctx.seed()).unwrap();
        let distinct: BTreeSet<usize> = hf.values().iter().copied().collect();
        assert_eq!(distinct.len(), 2);
        let v: Vec<usize> = distinct.into_iter().collect();
        assert!(v[1] - v[0] == 1 || v[1] - v[0] == 2 * ctx.h() - 1);

        let ctx = standard("A3");
        let rs = ctx.root_system();
        for pi in enumerate_compatible(&ctx, Execution::default()).unwrap() {
            let hf = height_of(&ctx, &pi).unwrap();
            let moved = pi.apply(rs, ctx.element());
            assert_eq!(height_of(&ctx, &moved).unwrap(), hf.shifted(1));
            let omega = orientation_of(&ctx, &pi).unwrap();
            for i in omega.sinks() {
                let after = height_of(&ctx, &elementary_reflection(&ctx, &pi, i).unwrap()).unwrap();
                for j in 0..rs.rank() {
                    let expected = if j == i {
                        (hf.get(j) + 2 * ctx.h() - 2) % (2 * ctx.h())
                    } else {
                        hf.get(j)
                    };
                    assert_eq!(after.get(j), expected);
                }
            }
        }
    }

    #[test]
    fn heights_round_trip() {
        for name in ["A1", "A3", "D4"] {
            let ctx = standard(name);
            let q = build_ihat(ctx.root_system());
            let all = all_height_functions(&q);
            assert_eq!(all.len(), ctx.h() << (ctx.rank() - 1));
            let mut bases = BTreeSet::new();
            for hf in &all {
                assert!(is_slice(&q, &hf.slice()));
                let pi = simple_system_from_height(&ctx, hf).unwrap();
                assert_eq!(&height_of(&ctx, &pi).unwrap(), hf);
                bases.insert(pi.base().to_vec());
            }
            assert_eq!(bases.len(), all.len());
        }
        let ctx = standard("A4");
        let hf = height_of(&ctx, ctx.seed()).unwrap();
        assert_eq!(&simple_system_from_height(&ctx, &hf).unwrap(), ctx.seed());
        let moved = simple_system_from_height(&ctx, &hf.shifted(1)).unwrap();
        assert_eq!(moved, ctx.seed().apply(ctx.root_system(), ctx.element()));
    }

    #[test]
    fn height_function_validation() {
        let q = build_ihat(&RootSystem::new("A3".parse().unwrap()));
        assert!(HeightFunction::new(&q, vec![0, 1, 2]).is_ok());
        assert!(HeightFunction::new(&q, vec![0, 7, 6]).is_ok());
        assert!(HeightFunction::new(&q, vec![0, 1, 4]).is_err());
        assert!(HeightFunction::new(&q, vec![1, 2, 3]).is_err());
        assert!(HeightFunction::new(&q, vec![0, 1]).is_err());
        assert!(!is_slice(&q, &[IhatVertex { i: 0, n: 0 }, IhatVertex { i: 1, n: 1 }]));
    }

    #[test]
    fn w0_word_a4() {
        let ctx = standard("A4");
        let word = w0_word(&ctx, ctx.seed()).unwrap();
        let labels: Vec<usize> = word.iter().map(|i| i + 1).collect();
        assert_eq!(labels, vec![1, 2, 1, 3, 2, 4, 1, 3, 2, 1]);
        let a1 = standard("A1");
        assert_eq!(w0_word(&a1, a1.seed()).unwrap(), vec![0]);
    }

    #[test]
    fn w0_words_for_all_compatible() {
        for name in ["A3", "A4", "D4"] {
            let ctx = standard(name);
            for pi in enumerate_compatible(&ctx, Execution::default()).unwrap() {
                let word = w0_word(&ctx, &pi).unwrap();
                assert_eq!(word.len(), ctx.rank() * ctx.h() / 2);
            }
        }
    }

    #[test]
    fn delta_region_properties() {
        for name in ["A3", "A4", "D4", "D5", "E6"] {
            let ctx = standard(name);
            let rs = ctx.root_system();
            let q = build_ihat(rs);
            let inv = rs.opposition_involution();
            for pi in enumerate_compatible(&ctx, Execution::default()).unwrap().iter().step_by(7) {
                let neg = negative_system(&ctx, pi);
                let d = delta_region(&ctx, pi).unwrap();
                let dn = delta_region(&ctx, &neg).unwrap();
                let a: BTreeSet<IhatVertex> = d.vertices().into_iter().collect();
                let b: BTreeSet<IhatVertex> = dn.vertices().into_iter().collect();
                assert!(a.is_disjoint(&b));
                assert_eq!(a.len() + b.len(), q.len());
                // ν(I_Π) = I_{−Π}.
                let lower = height_of(&ctx, pi).unwrap().slice();
                let upper: BTreeSet<IhatVertex> =
                    height_of(&ctx, &neg).unwrap().slice().into_iter().collect();
                let image: BTreeSet<IhatVertex> =
                    lower.iter().map(|&v| nakayama_ihat(&q, &inv, v)).collect();
                assert_eq!(image, upper);
            }
        }
    }

    #[test]
    fn bipartite_delta_and_kostant() {
        for name in ["A3", "A5", "D4", "D5", "E6", "E7"] {
            let ctx = bipartite(name);
            let rs = ctx.root_system();
            let d = delta_region(&ctx, ctx.seed()).unwrap();
            let levels: BTreeSet<i64> = d.entries().iter().map(|e| e.level).collect();
            assert_eq!(levels.len(), ctx.h(), "{name}");
            let w0 = longest_element(rs, ctx.seed());
            assert_eq!(ctx.element().pow(ctx.h() / 2), w0, "{name}");
        }
    }

    #[test]
    fn lattice_reduction() {
        let ctx = standard("D5");
        let rs = ctx.root_system();
        let q = build_ihat(rs);
        let reference = height_of(&ctx, ctx.seed()).unwrap();
        let lattice = MeshLattice::new(&q, &reference).unwrap();
        for (i, v) in reference.slice().into_iter().enumerate() {
            let mut unit = vec![0; 5];
            unit[i] = 1;
            assert_eq!(lattice.reduce(&[(v, 1)]).coords, unit);
        }
        for v in q.vertices() {
            assert!(lattice.reduce(&mesh_relation(&q, v)).coords.iter().all(|&c| c == 0));
        }
        let phi = build_phi(&ctx, ctx.seed()).unwrap();
        let omega = orientation_of(&ctx, ctx.seed()).unwrap();
        for a in 0..rs.len() {
            let coords = ctx.seed().coords_of(rs, a);
            let expected: Vec<i64> = (0..5)
                .map(|k| coords[k] - omega.successors(k).iter().map(|&j| coords[j]).sum::<i64>())
                .collect();
            assert_eq!(lattice.reduce(&[(phi.apply(a), 1)]).coords, expected);
        }
    }

    #[test]
    fn presentation_is_free_of_rank_r() {
        for name in ["A1", "A2", "A3", "A4", "A5", "D4", "D5", "E6"] {
            let q = build_ihat(&RootSystem::new(name.parse().unwrap()));
            let (rank, torsion) = presentation_structure(&q).unwrap();
            assert_eq!(rank, q.rank(), "{name}");
            assert!(torsion.is_empty(), "{name}");
        }
    }
}
