//! Coxeter elements, compatible simple systems, orientations of the Dynkin
//! diagram, elementary reflections at sinks and sources, and the C-orbit
//! representatives `β_i`.

use std::collections::{BTreeSet, BinaryHeap, HashSet, VecDeque};
use std::cmp::Reverse;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{cross_check, Error, Result};
use crate::linalg::IntMatrix;
use crate::par::Execution;
use crate::rootsys::{
    reduced_word, simple_reflection, weyl_length, DescentRule, RootId, RootSystem, SimpleSystem,
    WeylElement,
};

/// A Coxeter element together with the root system it acts on.
#[derive(Clone)]
pub struct CoxeterContext {
    rs: Arc<RootSystem>,
    element: WeylElement,
    inverse: WeylElement,
    order: usize,
    seed: SimpleSystem,
    canonical: OnceLock<SimpleSystem>,
}

impl fmt::Debug for CoxeterContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterContext")
            .field("dynkin", &self.rs.dynkin())
            .field("order", &self.order)
            .field("seed", &self.seed)
            .finish()
    }
}

impl CoxeterContext {
    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn root_system_arc(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn element(&self) -> &WeylElement {
        &self.element
    }

    pub fn inverse(&self) -> &WeylElement {
        &self.inverse
    }

    /// The order `h` of `C`.
    pub fn h(&self) -> usize {
        self.order
    }

    /// The simple system `C` was built from; always compatible.
    pub fn seed(&self) -> &SimpleSystem {
        &self.seed
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    /// `C^k(root)` for any integer `k`.
    pub fn power_apply(&self, k: i64, root: RootId) -> RootId {
        let h = self.order as i64;
        let steps = k.rem_euclid(h);
        (0..steps).fold(root, |a, _| self.element.apply(a))
    }

    /// The C-orbit of a root, starting at the root itself.
    pub fn orbit(&self, root: RootId) -> Vec<RootId> {
        let mut out = vec![root];
        let mut a = self.element.apply(root);
        while a != root {
            out.push(a);
            a = self.element.apply(a);
        }
        out
    }

    /// Matrix of `C` on reference coordinates.
    pub fn matrix(&self) -> IntMatrix {
        self.rs.matrix_of(&self.element)
    }

    /// The compatible simple system with the lexicographically least witness
    /// word, ties broken by the least base. It depends only on `C`.
    pub fn canonical_simple_system(&self) -> &SimpleSystem {
        self.canonical.get_or_init(|| {
            enumerate_compatible(self, Execution::default())
                .expect("reflection closure of a compatible seed")
                .into_iter()
                .next()
                .expect("at least one compatible simple system")
        })
    }
}

/// `C = s_{i₁}^Π ⋯ s_{i_r}^Π` for an ordering of all vertices.
pub fn coxeter_from_word(
    rs: &Arc<RootSystem>,
    pi: &SimpleSystem,
    order: &[usize],
) -> Result<CoxeterContext> {
    let r = rs.rank();
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..r).collect::<Vec<_>>() {
        return Err(Error::NotAPermutation(order.to_vec()));
    }
    let element = WeylElement::from_word(rs, pi, order);
    let order_h = element.order();
    if order_h != rs.coxeter_number() {
        return Err(cross_check(
            "coxeter number",
            format!("order of C is {order_h}, expected {}", rs.coxeter_number()),
        ));
    }
    let fixed = IntMatrix::identity(r).sub(&rs.matrix_of(&element));
    if fixed.determinant()? == 0 {
        return Err(cross_check("no fixed vector", "det(1 − C) = 0"));
    }
    Ok(CoxeterContext {
        rs: Arc::clone(rs),
        inverse: element.inverse(),
        element,
        order: order_h,
        seed: pi.clone(),
        canonical: OnceLock::new(),
    })
}

/// An orientation of the Dynkin diagram: one arrow per edge.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orientation {
    rank: usize,
    /// `(tail, head)`, sorted by the underlying edge `(min, max)`.
    arrows: Vec<(usize, usize)>,
}

impl fmt::Debug for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Orientation {
    /// `1>2 3>2` with 1-based labels.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .arrows
            .iter()
            .map(|(a, b)| format!("{}>{}", a + 1, b + 1))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl Orientation {
    /// Validates that the arrows orient every Dynkin edge exactly once.
    pub fn from_arrows(rs: &RootSystem, arrows: &[(usize, usize)]) -> Result<Self> {
        let r = rs.rank();
        let mut keyed: Vec<((usize, usize), (usize, usize))> = Vec::new();
        for &(a, b) in arrows {
            if a >= r || b >= r {
                return Err(Error::VertexOutOfRange(a.max(b) + 1));
            }
            if !rs.are_adjacent(a, b) {
                return Err(Error::InvalidOrientation(format!(
                    "{}>{} is not a Dynkin edge",
                    a + 1,
                    b + 1
                )));
            }
            keyed.push(((a.min(b), a.max(b)), (a, b)));
        }
        keyed.sort_unstable();
        let edges: Vec<(usize, usize)> = keyed.iter().map(|(e, _)| *e).collect();
        if edges != rs.edges() {
            return Err(Error::InvalidOrientation(
                "every edge must be oriented exactly once".into(),
            ));
        }
        Ok(Orientation {
            rank: r,
            arrows: keyed.into_iter().map(|(_, a)| a).collect(),
        })
    }

    /// `i → j` whenever `i` precedes `j` in the word.
    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; rs.rank()];
        for (k, &i) in word.iter().enumerate() {
            pos[i] = k;
        }
        let arrows = rs
            .edges()
            .into_iter()
            .map(|(a, b)| if pos[a] < pos[b] { (a, b) } else { (b, a) })
            .collect();
        Orientation {
            rank: rs.rank(),
            arrows,
        }
    }

    /// All `2^{#edges}` orientations, in a fixed order.
    pub fn all(rs: &RootSystem) -> Vec<Self> {
        let edges = rs.edges();
        (0..1usize << edges.len())
            .map(|mask| Orientation {
                rank: rs.rank(),
                arrows: edges
                    .iter()
                    .enumerate()
                    .map(|(k, &(a, b))| if mask >> k & 1 == 0 { (a, b) } else { (b, a) })
                    .collect(),
            })
            .collect()
    }

    /// Arrows from the vertices at even distance from vertex 1 when
    /// `sources_even`, otherwise from the odd ones.
    pub fn bipartite(rs: &RootSystem, sources_even: bool) -> Self {
        let dist = rs.distance_from_first();
        let is_source = |i: usize| dist[i].is_multiple_of(2) == sources_even;
        Orientation {
            rank: rs.rank(),
            arrows: rs
                .edges()
                .into_iter()
                .map(|(a, b)| if is_source(a) { (a, b) } else { (b, a) })
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn has_arrow(&self, i: usize, j: usize) -> bool {
        self.arrows.contains(&(i, j))
    }

    /// `{j : j → i}`.
    pub fn predecessors(&self, i: usize) -> Vec<usize> {
        self.arrows.iter().filter(|a| a.1 == i).map(|a| a.0).collect()
    }

    /// `{j : i → j}`.
    pub fn successors(&self, i: usize) -> Vec<usize> {
        self.arrows.iter().filter(|a| a.0 == i).map(|a| a.1).collect()
    }

    pub fn is_sink(&self, i: usize) -> bool {
        self.arrows.iter().all(|a| a.0 != i)
    }

    pub fn is_source(&self, i: usize) -> bool {
        self.arrows.iter().all(|a| a.1 != i)
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.rank).filter(|&i| self.is_sink(i)).collect()
    }

    pub fn sources(&self) -> Vec<usize> {
        (0..self.rank).filter(|&i| self.is_source(i)).collect()
    }

    /// Reverses every arrow at `i`.
    pub fn reversed_at(&self, i: usize) -> Self {
        Orientation {
            rank: self.rank,
            arrows: self
                .arrows
                .iter()
                .map(|&(a, b)| if a == i || b == i { (b, a) } else { (a, b) })
                .collect(),
        }
    }

    pub fn opposite(&self) -> Self {
        Orientation {
            rank: self.rank,
            arrows: self.arrows.iter().map(|&(a, b)| (b, a)).collect(),
        }
    }

    /// Reflexive path order: `reaches(j, i)` iff `j = i` or there is an
    /// oriented path `j → ⋯ → i`.
    pub fn reaches(&self, from: usize, to: usize) -> bool {
        let mut seen = vec![false; self.rank];
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(v) = queue.pop_front() {
            if v == to {
                return true;
            }
            for w in self.successors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        false
    }

    /// Topological order, smallest available label first.
    pub fn linear_extension(&self) -> Vec<usize> {
        self.topological_sort(false)
    }

    /// Topological order, largest available label first.
    pub fn linear_extension_descending(&self) -> Vec<usize> {
        self.topological_sort(true)
    }

    fn topological_sort(&self, descending: bool) -> Vec<usize> {
        let mut indegree = vec![0usize; self.rank];
        for &(_, b) in &self.arrows {
            indegree[b] += 1;
        }
        let key = |i: usize| if descending { Reverse(self.rank - i) } else { Reverse(i) };
        let mut heap: BinaryHeap<(Reverse<usize>, usize)> = (0..self.rank)
            .filter(|&i| indegree[i] == 0)
            .map(|i| (key(i), i))
            .collect();
        let mut out = Vec::with_capacity(self.rank);
        while let Some((_, v)) = heap.pop() {
            out.push(v);
            for w in self.successors(v) {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    heap.push((key(w), w));
                }
            }
        }
        out
    }
}

/// Returns a reduced word for `C` in which every vertex occurs once, if
/// `l^Π(C) = r`.
pub fn is_compatible(ctx: &CoxeterContext, pi: &SimpleSystem) -> Option<Vec<usize>> {
    let rs = ctx.root_system();
    if weyl_length(rs, pi, ctx.element()) != rs.rank() {
        return None;
    }
    let word = reduced_word(rs, pi, ctx.element(), DescentRule::LeftLowest);
    let distinct: BTreeSet<usize> = word.iter().copied().collect();
    debug_assert_eq!(distinct.len(), rs.rank());
    Some(word)
}

fn require_compatible(ctx: &CoxeterContext, pi: &SimpleSystem) -> Result<Vec<usize>> {
    is_compatible(ctx, pi).ok_or_else(|| Error::NotCompatible {
        length: weyl_length(ctx.root_system(), pi, ctx.element()),
        rank: ctx.rank(),
    })
}

/// The orientation `i → j` iff `s_i` precedes `s_j` in a reduced word for
/// `C`. Two independently extracted words must agree.
pub fn orientation_of(ctx: &CoxeterContext, pi: &SimpleSystem) -> Result<Orientation> {
    let rs = ctx.root_system();
    let word = require_compatible(ctx, pi)?;
    let other = reduced_word(rs, pi, ctx.element(), DescentRule::RightHighest);
    let a = Orientation::from_word(rs, &word);
    let b = Orientation::from_word(rs, &other);
    if a != b {
        return Err(cross_check(
            "orientation independence",
            format!("words {word:?} and {other:?} give {a} and {b}"),
        ));
    }
    Ok(a)
}

/// The Coxeter element compatible with `pi` whose orientation is `omega`.
pub fn coxeter_from_orientation(
    rs: &Arc<RootSystem>,
    pi: &SimpleSystem,
    omega: &Orientation,
) -> Result<CoxeterContext> {
    if omega.rank() != rs.rank() {
        return Err(Error::DimensionMismatch {
            expected: rs.rank(),
            got: omega.rank(),
        });
    }
    coxeter_from_word(rs, pi, &omega.linear_extension())
}

/// `s_i^Π(Π)`, allowed only at a sink or source of the orientation of `pi`.
pub fn elementary_reflection(
    ctx: &CoxeterContext,
    pi: &SimpleSystem,
    i: usize,
) -> Result<SimpleSystem> {
    let rs = ctx.root_system();
    if i >= rs.rank() {
        return Err(Error::VertexOutOfRange(i + 1));
    }
    let omega = orientation_of(ctx, pi)?;
    if !omega.is_sink(i) && !omega.is_source(i) {
        return Err(Error::NotSinkOrSource(i + 1));
    }
    Ok(pi.apply(rs, &simple_reflection(rs, pi, i)))
}

/// A compatible simple system together with its witness word and orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibleSystem {
    pub system: SimpleSystem,
    pub word: Vec<usize>,
    pub orientation: Orientation,
}

/// Closure of the seed under elementary reflections, sorted by
/// `(witness word, base)`. Its size is `h·2^{r−1}`.
pub fn enumerate_compatible(ctx: &CoxeterContext, exec: Execution) -> Result<Vec<SimpleSystem>> {
    Ok(enumerate_compatible_detailed(ctx, exec)?
        .into_iter()
        .map(|c| c.system)
        .collect())
}

pub fn enumerate_compatible_detailed(
    ctx: &CoxeterContext,
    exec: Execution,
) -> Result<Vec<CompatibleSystem>> {
    let rs = ctx.root_system();
    let describe = |pi: &SimpleSystem| -> Result<CompatibleSystem> {
        let word = require_compatible(ctx, pi)?;
        let orientation = orientation_of(ctx, pi)?;
        Ok(CompatibleSystem {
            system: pi.clone(),
            word,
            orientation,
        })
    };
    let mut seen: HashSet<Vec<RootId>> = HashSet::from([ctx.seed().base().to_vec()]);
    let mut out = Vec::new();
    let mut frontier = vec![ctx.seed().clone()];
    while !frontier.is_empty() {
        let described = exec.try_map(&frontier, describe)?;
        let mut next = Vec::new();
        for c in &described {
            for i in 0..rs.rank() {
                if c.orientation.is_sink(i) || c.orientation.is_source(i) {
                    let reflected = c.system.apply(rs, &simple_reflection(rs, &c.system, i));
                    if seen.insert(reflected.base().to_vec()) {
                        next.push(reflected);
                    }
                }
            }
        }
        out.extend(described);
        frontier = next;
    }
    out.sort_by(|a, b| {
        a.word
            .cmp(&b.word)
            .then_with(|| a.system.base().cmp(b.system.base()))
    });
    Ok(out)
}

/// The C-orbit representatives `β_i^Π`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BetaFamily {
    pub beta: Vec<RootId>,
}

impl BetaFamily {
    pub fn get(&self, i: usize) -> RootId {
        self.beta[i]
    }
}

/// `β_i = Σ_{j ⩽ i} α_j`, cross-checked against the prefix-reflection formula
/// and the characterisation `{α ∈ R₊ : C⁻¹α ∈ R₋}`.
pub fn beta_family(ctx: &CoxeterContext, pi: &SimpleSystem) -> Result<BetaFamily> {
    let rs = ctx.root_system();
    let r = rs.rank();
    let word = require_compatible(ctx, pi)?;
    let omega = orientation_of(ctx, pi)?;

    let mut by_sum = Vec::with_capacity(r);
    for i in 0..r {
        let mut coords = vec![0i64; r];
        for j in (0..r).filter(|&j| omega.reaches(j, i)) {
            coords[j] += 1;
        }
        let root = pi
            .root_from_coords(rs, &coords)
            .ok_or_else(|| cross_check("beta partial sum", format!("{coords:?} is not a root")))?;
        by_sum.push(root);
    }

    let mut by_prefix = vec![0; r];
    let mut prefix = WeylElement::identity(rs.len());
    for &i in &word {
        by_prefix[i] = prefix.apply(pi.alpha(i));
        prefix = prefix.compose(&simple_reflection(rs, pi, i));
    }
    if by_prefix != by_sum {
        return Err(cross_check(
            "beta prefix formula",
            format!("partial sums {by_sum:?}, prefix products {by_prefix:?}"),
        ));
    }

    let filtered: BTreeSet<RootId> = (0..rs.len())
        .filter(|&a| pi.is_positive(rs, a) && !pi.is_positive(rs, ctx.inverse().apply(a)))
        .collect();
    let expected: BTreeSet<RootId> = by_sum.iter().copied().collect();
    if filtered != expected {
        return Err(cross_check(
            "beta characterisation",
            format!("filter gives {filtered:?}, partial sums {expected:?}"),
        ));
    }
    Ok(BetaFamily { beta: by_sum })
}

/// The new family after an elementary reflection at `i`: `β_i` becomes
/// `C⁻¹β_i` at a sink and `Cβ_i` at a source, the rest are unchanged.
/// Verified against [`beta_family`] of the reflected system.
pub fn beta_after_reflection(
    ctx: &CoxeterContext,
    pi: &SimpleSystem,
    i: usize,
) -> Result<(SimpleSystem, BetaFamily)> {
    let omega = orientation_of(ctx, pi)?;
    let reflected = elementary_reflection(ctx, pi, i)?;
    let mut family = beta_family(ctx, pi)?;
    // Isolated vertices (A1) are both; the sink rule applies and C⁻¹ = C there.
    family.beta[i] = if omega.is_sink(i) {
        ctx.inverse().apply(family.beta[i])
    } else {
        ctx.element().apply(family.beta[i])
    };
    let direct = beta_family(ctx, &reflected)?;
    if direct != family {
        return Err(cross_check(
            "beta after reflection",
            format!("update rule gives {:?}, direct {:?}", family.beta, direct.beta),
        ));
    }
    Ok((reflected, family))
}
