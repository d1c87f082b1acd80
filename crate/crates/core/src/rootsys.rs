//! Simply-laced root systems of type A, D and E, built exactly in the
//! coordinates of a fixed reference simple system, together with their Weyl
//! groups acting as permutations of the root table.
//!
//! Vertices of the Dynkin diagram are 0-based indices internally; the
//! Bourbaki labels `1..=rank` are `index + 1`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{cross_check, Error, Result};
use crate::linalg::IntMatrix;
use crate::par::Execution;

/// Index into a [`RootSystem`]'s root table.
pub type RootId = usize;

/// Default bound on brute-force Weyl group enumeration.
pub const ENUMERATION_CAP: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    D,
    E,
}

/// A simply-laced Dynkin diagram with Bourbaki vertex labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DynkinType {
    family: Family,
    rank: usize,
}

impl DynkinType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(DynkinType { family, rank })
        } else {
            Err(Error::InvalidDynkin(format!("{family:?}{rank}")))
        }
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    /// Undirected edges `(i, j)` with `i < j`, 0-based.
    pub fn edges(self) -> Vec<(usize, usize)> {
        let n = self.rank;
        let mut edges: Vec<(usize, usize)> = match self.family {
            Family::A => (0..n - 1).map(|i| (i, i + 1)).collect(),
            Family::D => {
                let mut e: Vec<_> = (0..n - 2).map(|i| (i, i + 1)).collect();
                e.push((n - 3, n - 1));
                e
            }
            Family::E => {
                // 1-3-4-5-...-n with 2 attached to 4.
                let mut e = vec![(0, 2), (1, 3)];
                e.extend((2..n - 1).map(|i| (i, i + 1)));
                e
            }
        };
        edges.sort_unstable();
        edges
    }

    pub fn coxeter_number(self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n + 1,
            Family::D => 2 * n - 2,
            Family::E => match n {
                6 => 12,
                7 => 18,
                _ => 30,
            },
        }
    }

    /// Order of the Weyl group from the classical product formulas.
    pub fn weyl_order(self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.family {
            Family::A => fact(n + 1),
            Family::D => (1u128 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
        }
    }

    /// Root count `r·h`.
    pub fn root_count(self) -> usize {
        self.rank * self.coxeter_number()
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for DynkinType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(Error::InvalidDynkin(s.to_string())),
        };
        let rank = chars
            .as_str()
            .parse::<usize>()
            .map_err(|_| Error::InvalidDynkin(s.to_string()))?;
        DynkinType::new(family, rank)
    }
}

/// A root with its coordinates in the reference simple-system basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Root {
    pub index: RootId,
    pub coords: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }
}

/// The full root table of a Dynkin type.
///
/// Positive roots (with respect to the reference simple system) come first,
/// ordered by height and then by descending coordinates, so the simple root
/// of vertex `i` has index `i`. The negative of root `k` is `k + |R₊|`.
#[derive(Debug, Clone)]
pub struct RootSystem {
    dynkin: DynkinType,
    roots: Vec<Root>,
    cartan: IntMatrix,
    neighbors: Vec<Vec<usize>>,
    lookup: HashMap<Vec<i64>, RootId>,
    reference_reflections: Vec<WeylElement>,
}

impl RootSystem {
    /// Closes the reference simple roots under the simple reflections.
    pub fn new(dynkin: DynkinType) -> Self {
        let r = dynkin.rank();
        let mut cartan = IntMatrix::identity(r);
        let mut neighbors = vec![Vec::new(); r];
        for i in 0..r {
            cartan[(i, i)] = 2;
        }
        for (i, j) in dynkin.edges() {
            cartan[(i, j)] = -1;
            cartan[(j, i)] = -1;
            neighbors[i].push(j);
            neighbors[j].push(i);
        }

        let unit = |i: usize| {
            let mut v = vec![0i64; r];
            v[i] = 1;
            v
        };
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..r {
            for v in [unit(i), unit(i).iter().map(|x| -x).collect()] {
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
        while let Some(v) = queue.pop_front() {
            let pairing = cartan.mul_vec(&v);
            for (i, &p) in pairing.iter().enumerate() {
                let mut w = v.clone();
                w[i] -= p;
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }

        let mut positive: Vec<Vec<i64>> = seen
            .into_iter()
            .filter(|v| v.iter().all(|&x| x >= 0))
            .collect();
        positive.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let negative: Vec<Vec<i64>> = positive
            .iter()
            .map(|v| v.iter().map(|x| -x).collect())
            .collect();
        let roots: Vec<Root> = positive
            .into_iter()
            .chain(negative)
            .enumerate()
            .map(|(index, coords)| Root { index, coords })
            .collect();
        let lookup = roots.iter().map(|a| (a.coords.clone(), a.index)).collect();

        let mut rs = RootSystem {
            dynkin,
            roots,
            cartan,
            neighbors,
            lookup,
            reference_reflections: Vec::new(),
        };
        rs.reference_reflections = (0..r)
            .map(|i| rs.reflection_in(i))
            .collect::<Vec<_>>();
        rs
    }

    pub fn dynkin(&self) -> DynkinType {
        self.dynkin
    }

    pub fn rank(&self) -> usize {
        self.dynkin.rank()
    }

    pub fn coxeter_number(&self) -> usize {
        self.dynkin.coxeter_number()
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn root(&self, id: RootId) -> &Root {
        &self.roots[id]
    }

    pub fn coords(&self, id: RootId) -> &[i64] {
        &self.roots[id].coords
    }

    pub fn find(&self, coords: &[i64]) -> Option<RootId> {
        self.lookup.get(coords).copied()
    }

    pub fn negate(&self, id: RootId) -> RootId {
        let n = self.num_positive();
        if id < n {
            id + n
        } else {
            id - n
        }
    }

    /// Positivity with respect to the reference simple system.
    pub fn is_positive(&self, id: RootId) -> bool {
        id < self.num_positive()
    }

    pub fn simple_root(&self, i: usize) -> RootId {
        i
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn are_adjacent(&self, i: usize, j: usize) -> bool {
        self.cartan[(i, j)] == -1
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.dynkin.edges()
    }

    /// Graph distance from vertex `0` (label 1).
    pub fn distance_from_first(&self) -> Vec<usize> {
        let r = self.rank();
        let mut dist = vec![usize::MAX; r];
        dist[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for &j in &self.neighbors[i] {
                if dist[j] == usize::MAX {
                    dist[j] = dist[i] + 1;
                    queue.push_back(j);
                }
            }
        }
        dist
    }

    /// `xᵀ · Cartan · y` on reference coordinates.
    pub fn inner_product(&self, x: &[i64], y: &[i64]) -> Result<i64> {
        let r = self.rank();
        for v in [x, y] {
            if v.len() != r {
                return Err(Error::DimensionMismatch {
                    expected: r,
                    got: v.len(),
                });
            }
        }
        Ok(self.cartan.bilinear(x, y))
    }

    pub fn inner_roots(&self, a: RootId, b: RootId) -> i64 {
        self.cartan.bilinear(self.coords(a), self.coords(b))
    }

    fn reflection_in(&self, i: usize) -> WeylElement {
        self.reflection_along(self.simple_root(i))
    }

    /// The reflection `x ↦ x − (x, α)α` as a permutation of the roots.
    pub fn reflection_along(&self, alpha: RootId) -> WeylElement {
        let a = self.coords(alpha);
        let perm = self
            .roots
            .iter()
            .map(|x| {
                let p = self.cartan.bilinear(&x.coords, a);
                let image: Vec<i64> = x.coords.iter().zip(a).map(|(u, v)| u - p * v).collect();
                self.find(&image).expect("root system closed under reflections") as u8
            })
            .collect();
        WeylElement { perm }
    }

    /// Simple reflections of the reference simple system.
    pub fn reference_reflections(&self) -> &[WeylElement] {
        &self.reference_reflections
    }

    /// Display transform to the standard Euclidean realisation, for types A
    /// and D. Type A lives in `ℤ^{r+1}`, type D in `ℤ^r`.
    pub fn euclidean(&self, coords: &[i64]) -> Option<Vec<i64>> {
        let r = self.rank();
        match self.dynkin.family() {
            Family::A => {
                let mut v = vec![0i64; r + 1];
                for (i, &c) in coords.iter().enumerate() {
                    v[i] += c;
                    v[i + 1] -= c;
                }
                Some(v)
            }
            Family::D => {
                let mut v = vec![0i64; r];
                for (i, &c) in coords.iter().enumerate().take(r - 1) {
                    v[i] += c;
                    v[i + 1] -= c;
                }
                v[r - 2] += coords[r - 1];
                v[r - 1] += coords[r - 1];
                Some(v)
            }
            Family::E => None,
        }
    }

    /// `e1-e2` style label of a root, for types A and D. Positive terms come
    /// first, so `e_i − e_j` always reads `ei-ej`.
    pub fn euclidean_label(&self, id: RootId) -> Option<String> {
        let v = self.euclidean(self.coords(id))?;
        let mut terms: Vec<(usize, i64)> = v.into_iter().enumerate().filter(|&(_, c)| c != 0).collect();
        terms.sort_by_key(|&(k, c)| (c < 0, k));
        let mut out = String::new();
        for (k, c) in terms {
            let sign = if c < 0 { "-" } else if out.is_empty() { "" } else { "+" };
            let mag = if c.abs() == 1 {
                String::new()
            } else {
                c.abs().to_string()
            };
            out.push_str(&format!("{sign}{mag}e{}", k + 1));
        }
        Some(out)
    }

    /// Applies `w` to an arbitrary lattice vector in reference coordinates.
    pub fn apply_to_vector(&self, w: &WeylElement, x: &[i64]) -> Vec<i64> {
        let r = self.rank();
        let mut out = vec![0i64; r];
        for (i, &c) in x.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let img = self.coords(w.apply(self.simple_root(i)));
            for k in 0..r {
                out[k] += c * img[k];
            }
        }
        out
    }

    /// Matrix of `w` acting on reference coordinates (columns are images of
    /// the reference simple roots).
    pub fn matrix_of(&self, w: &WeylElement) -> IntMatrix {
        let cols: Vec<Vec<i64>> = (0..self.rank())
            .map(|i| self.coords(w.apply(self.simple_root(i))).to_vec())
            .collect();
        IntMatrix::from_columns(&cols)
    }

    /// Reconstructs a permutation from the images of the reference simple
    /// roots, checking that the linear map actually permutes the roots.
    pub fn element_from_images(&self, images: &[RootId]) -> Result<WeylElement> {
        let r = self.rank();
        if images.len() != r {
            return Err(Error::DimensionMismatch {
                expected: r,
                got: images.len(),
            });
        }
        let cols: Vec<Vec<i64>> = images.iter().map(|&b| self.coords(b).to_vec()).collect();
        let m = IntMatrix::from_columns(&cols);
        let mut perm = Vec::with_capacity(self.len());
        for a in &self.roots {
            let image = m.mul_vec(&a.coords);
            match self.find(&image) {
                Some(id) => perm.push(id as u8),
                None => {
                    return Err(Error::NotASimpleSystem(format!(
                        "image {image:?} of root {:?} is not a root",
                        a.coords
                    )))
                }
            }
        }
        Ok(WeylElement { perm })
    }

    /// The opposition involution `i ↦ ǐ` defined by `w₀(α_ǐ) = −α_i`,
    /// computed on the reference simple system.
    pub fn opposition_involution(&self) -> Vec<usize> {
        let pi = SimpleSystem::reference(self);
        let w0 = longest_element(self, &pi);
        involution_from_longest(self, &pi, &w0)
    }
}

/// Weyl group element stored as a permutation of root indices.
///
/// Composition `a.compose(b)` is `a ∘ b` (apply `b` first).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    perm: Vec<u8>,
}

impl WeylElement {
    pub fn identity(n_roots: usize) -> Self {
        WeylElement {
            perm: (0..n_roots).map(|k| k as u8).collect(),
        }
    }

    pub fn from_perm(perm: Vec<u8>) -> Self {
        WeylElement { perm }
    }

    pub fn perm(&self) -> &[u8] {
        &self.perm
    }

    pub fn apply(&self, root: RootId) -> RootId {
        self.perm[root] as RootId
    }

    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        WeylElement {
            perm: other.perm.iter().map(|&k| self.perm[k as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> WeylElement {
        let mut inv = vec![0u8; self.perm.len()];
        for (k, &v) in self.perm.iter().enumerate() {
            inv[v as usize] = k as u8;
        }
        WeylElement { perm: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(k, &v)| k == v as usize)
    }

    pub fn pow(&self, k: usize) -> WeylElement {
        let mut out = WeylElement::identity(self.perm.len());
        for _ in 0..k {
            out = self.compose(&out);
        }
        out
    }

    /// Multiplicative order, as the lcm of the cycle lengths.
    pub fn order(&self) -> usize {
        let n = self.perm.len();
        let mut seen = vec![false; n];
        let mut order = 1usize;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = self.perm[k] as usize;
                len += 1;
            }
            order = num_integer::lcm(order, len);
        }
        order
    }

    /// Product of simple reflections `s_{w[0]} ⋯ s_{w[l-1]}` of `pi`.
    pub fn from_word(rs: &RootSystem, pi: &SimpleSystem, word: &[usize]) -> WeylElement {
        word.iter().fold(WeylElement::identity(rs.len()), |acc, &i| {
            acc.compose(&simple_reflection(rs, pi, i))
        })
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElement{:?}", self.perm)
    }
}

/// An ordered simple system `i ↦ α_i^Π` with its Weyl witness
/// `w(α_i^ref) = α_i^Π`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleSystem {
    base: Vec<RootId>,
    witness: WeylElement,
    witness_inv: WeylElement,
}

impl SimpleSystem {
    pub fn reference(rs: &RootSystem) -> Self {
        let id = WeylElement::identity(rs.len());
        SimpleSystem {
            base: (0..rs.rank()).collect(),
            witness: id.clone(),
            witness_inv: id,
        }
    }

    /// `w(Π_ref)` with the induced indexing.
    pub fn from_weyl(rs: &RootSystem, w: WeylElement) -> Self {
        let base = (0..rs.rank()).map(|i| w.apply(rs.simple_root(i))).collect();
        let witness_inv = w.inverse();
        SimpleSystem {
            base,
            witness: w,
            witness_inv,
        }
    }

    /// Validates an ordered tuple of roots as a simple system whose pairwise
    /// products reproduce the Cartan matrix under the given indexing.
    pub fn from_base(rs: &RootSystem, base: Vec<RootId>) -> Result<Self> {
        let r = rs.rank();
        if base.len() != r {
            return Err(Error::DimensionMismatch {
                expected: r,
                got: base.len(),
            });
        }
        for i in 0..r {
            for j in 0..r {
                let got = rs.inner_roots(base[i], base[j]);
                if got != rs.cartan()[(i, j)] {
                    return Err(Error::NotASimpleSystem(format!(
                        "(α_{}, α_{}) = {got}, expected {}",
                        i + 1,
                        j + 1,
                        rs.cartan()[(i, j)]
                    )));
                }
            }
        }
        let w = rs.element_from_images(&base)?;
        Ok(Self::from_weyl(rs, w))
    }

    pub fn base(&self) -> &[RootId] {
        &self.base
    }

    pub fn alpha(&self, i: usize) -> RootId {
        self.base[i]
    }

    pub fn witness(&self) -> &WeylElement {
        &self.witness
    }

    pub fn rank(&self) -> usize {
        self.base.len()
    }

    pub fn is_positive(&self, rs: &RootSystem, root: RootId) -> bool {
        rs.is_positive(self.witness_inv.apply(root))
    }

    /// Coordinates of a root in the basis `{α_i^Π}`.
    pub fn coords_of(&self, rs: &RootSystem, root: RootId) -> Vec<i64> {
        rs.coords(self.witness_inv.apply(root)).to_vec()
    }

    /// The root `Σ c_i α_i^Π`, if it is one.
    pub fn root_from_coords(&self, rs: &RootSystem, coords: &[i64]) -> Option<RootId> {
        rs.find(coords).map(|id| self.witness.apply(id))
    }

    /// Converts a lattice vector given in the basis `{α_i^Π}` to reference
    /// coordinates.
    pub fn to_reference(&self, rs: &RootSystem, coords: &[i64]) -> Vec<i64> {
        rs.apply_to_vector(&self.witness, coords)
    }

    /// `w(Π)` with the W-compatible indexing `α_i^{wΠ} = w(α_i^Π)`.
    pub fn apply(&self, rs: &RootSystem, w: &WeylElement) -> SimpleSystem {
        Self::from_weyl(rs, w.compose(&self.witness))
    }

    pub fn positive_roots(&self, rs: &RootSystem) -> Vec<RootId> {
        (0..rs.len()).filter(|&a| self.is_positive(rs, a)).collect()
    }
}

impl fmt::Debug for SimpleSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleSystem{:?}", self.base)
    }
}

/// The simple reflection `s_i^Π`, computed as `w ∘ s_i^ref ∘ w⁻¹`.
pub fn simple_reflection(rs: &RootSystem, pi: &SimpleSystem, i: usize) -> WeylElement {
    pi.witness
        .compose(&rs.reference_reflections[i])
        .compose(&pi.witness_inv)
}

/// Inversion count `#{α ∈ R₊^Π : w(α) ∈ R₋^Π}`.
pub fn weyl_length(rs: &RootSystem, pi: &SimpleSystem, w: &WeylElement) -> usize {
    (0..rs.len())
        .filter(|&a| pi.is_positive(rs, a) && !pi.is_positive(rs, w.apply(a)))
        .count()
}

/// Which descent a greedy reduced-word extraction strips at each step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DescentRule {
    /// Strip the lowest-labelled left descent, building the word front to back.
    LeftLowest,
    /// Strip the highest-labelled right descent, building the word back to front.
    RightHighest,
}

/// A reduced word for `w` in the simple reflections of `pi`.
pub fn reduced_word(
    rs: &RootSystem,
    pi: &SimpleSystem,
    w: &WeylElement,
    rule: DescentRule,
) -> Vec<usize> {
    let r = rs.rank();
    let reflections: Vec<WeylElement> = (0..r).map(|i| simple_reflection(rs, pi, i)).collect();
    let mut current = w.clone();
    let mut word = Vec::new();
    match rule {
        DescentRule::LeftLowest => loop {
            let inv = current.inverse();
            let Some(i) = (0..r).find(|&i| !pi.is_positive(rs, inv.apply(pi.alpha(i)))) else {
                break;
            };
            word.push(i);
            current = reflections[i].compose(&current);
        },
        DescentRule::RightHighest => {
            while let Some(i) = (0..r)
                .rev()
                .find(|&i| !pi.is_positive(rs, current.apply(pi.alpha(i))))
            {
                word.push(i);
                current = current.compose(&reflections[i]);
            }
            word.reverse();
        }
    }
    debug_assert!(current.is_identity());
    word
}

/// The longest element `w₀^Π`, built by multiplying in left ascents until
/// none remain.
pub fn longest_element(rs: &RootSystem, pi: &SimpleSystem) -> WeylElement {
    let r = rs.rank();
    let reflections: Vec<WeylElement> = (0..r).map(|i| simple_reflection(rs, pi, i)).collect();
    let mut w = WeylElement::identity(rs.len());
    loop {
        let inv = w.inverse();
        match (0..r).find(|&i| pi.is_positive(rs, inv.apply(pi.alpha(i)))) {
            Some(i) => w = reflections[i].compose(&w),
            None => return w,
        }
    }
}

/// `ǐ` from `w₀(α_ǐ^Π) = −α_i^Π`.
pub fn involution_from_longest(rs: &RootSystem, pi: &SimpleSystem, w0: &WeylElement) -> Vec<usize> {
    (0..rs.rank())
        .map(|i| {
            let target = rs.negate(pi.alpha(i));
            (0..rs.rank())
                .find(|&j| w0.apply(pi.alpha(j)) == target)
                .expect("longest element maps simple roots to negative simple roots")
        })
        .collect()
}

/// Brute-force enumeration of the Weyl group, refused above `cap`.
///
/// The result is cross-checked against the order formula and against
/// orbit-stabiliser on the first simple root.
pub fn enumerate_weyl_group(
    rs: &RootSystem,
    cap: u128,
    exec: Execution,
) -> Result<Vec<WeylElement>> {
    let order = rs.dynkin().weyl_order();
    if order > cap {
        return Err(Error::EnumerationCap {
            dynkin: rs.dynkin().to_string(),
            order,
            cap,
        });
    }
    let gens = rs.reference_reflections();
    let identity = WeylElement::identity(rs.len());
    let mut seen: HashSet<WeylElement> = HashSet::from([identity.clone()]);
    let mut elements = vec![identity.clone()];
    let mut frontier = vec![identity];
    while !frontier.is_empty() {
        let products: Vec<Vec<WeylElement>> =
            exec.map(&frontier, |w| gens.iter().map(|s| s.compose(w)).collect());
        let mut next = Vec::new();
        for w in products.into_iter().flatten() {
            if seen.insert(w.clone()) {
                elements.push(w.clone());
                next.push(w);
            }
        }
        frontier = next;
    }
    if elements.len() as u128 != order {
        return Err(cross_check(
            "weyl order",
            format!("enumerated {} elements, formula gives {order}", elements.len()),
        ));
    }
    let alpha = rs.simple_root(0);
    let stabiliser = elements.iter().filter(|w| w.apply(alpha) == alpha).count();
    if (stabiliser * rs.len()) as u128 != order {
        return Err(cross_check(
            "orbit-stabiliser",
            format!("|R|·|Stab| = {}·{stabiliser} ≠ {order}", rs.len()),
        ));
    }
    Ok(elements)
}

/// All simple systems `w(Π_ref)`, one per Weyl element.
pub fn all_simple_systems(rs: &RootSystem, group: &[WeylElement]) -> Vec<SimpleSystem> {
    group
        .iter()
        .map(|w| SimpleSystem::from_weyl(rs, w.clone()))
        .collect()
}
