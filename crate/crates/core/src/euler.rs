//! The non-symmetric Euler form, computed three ways: from a compatible
//! simple system, in closed form from `C`, and by recursion on `Î`.

use num_rational::BigRational;

use crate::arq::{build_phi, IhatQuiver, IhatVertex, PhiMap};
use crate::coxeter::{beta_family, CoxeterContext};
use crate::error::{cross_check, Error, Result};
use crate::linalg::{IntMatrix, RatMatrix};
use crate::par::Execution;
use crate::rootsys::{RootId, RootSystem, SimpleSystem};

/// `⟨x, y⟩ = xᵀ G y` on reference coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerForm {
    gram: IntMatrix,
}

impl EulerForm {
    pub fn from_gram(gram: IntMatrix) -> Self {
        EulerForm { gram }
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn pair(&self, x: &[i64], y: &[i64]) -> i64 {
        self.gram.bilinear(x, y)
    }

    pub fn pair_roots(&self, rs: &RootSystem, a: RootId, b: RootId) -> i64 {
        self.pair(rs.coords(a), rs.coords(b))
    }

    /// `Bᵀ G B` for a basis given by roots.
    pub fn in_basis(&self, rs: &RootSystem, basis: &[RootId]) -> IntMatrix {
        let cols: Vec<Vec<i64>> = basis.iter().map(|&b| rs.coords(b).to_vec()).collect();
        let b = IntMatrix::from_columns(&cols);
        b.transpose().mul(&self.gram).mul(&b)
    }

    /// `⟨x, y⟩ = −⟨y, C⁻¹x⟩` on all root pairs.
    pub fn check_serre_duality(&self, ctx: &CoxeterContext) -> Result<()> {
        let rs = ctx.root_system();
        for a in 0..rs.len() {
            let ca = ctx.inverse().apply(a);
            for b in 0..rs.len() {
                if self.pair_roots(rs, a, b) != -self.pair_roots(rs, b, ca) {
                    return Err(cross_check(
                        "serre duality",
                        format!("fails for roots {a} and {b}"),
                    ));
                }
            }
        }
        Ok(())
    }

    /// `⟨x, y⟩ + ⟨y, x⟩ = (x, y)`.
    pub fn check_symmetrization(&self, rs: &RootSystem) -> Result<()> {
        if self.gram.transpose().add(&self.gram) != *rs.cartan() {
            return Err(cross_check("symmetrization", "G + Gᵀ differs from the Cartan matrix"));
        }
        Ok(())
    }

    /// `⟨Cx, Cy⟩ = ⟨x, y⟩`.
    pub fn check_c_invariance(&self, ctx: &CoxeterContext) -> Result<()> {
        let m = ctx.matrix();
        if m.transpose().mul(&self.gram).mul(&m) != self.gram {
            return Err(cross_check("C-invariance", "CᵀGC differs from G"));
        }
        Ok(())
    }
}

/// The form both on reference coordinates and in the basis `β^{Π_lex}` of
/// the canonical compatible system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerTable {
    pub form: EulerForm,
    pub basis: Vec<RootId>,
    pub on_lattice: IntMatrix,
}

fn table_from_form(ctx: &CoxeterContext, form: EulerForm) -> Result<EulerTable> {
    let basis = beta_family(ctx, ctx.canonical_simple_system())?.beta;
    let on_lattice = form.in_basis(ctx.root_system(), &basis);
    Ok(EulerTable {
        form,
        basis,
        on_lattice,
    })
}

fn columns(rs: &RootSystem, roots: &[RootId]) -> IntMatrix {
    let cols: Vec<Vec<i64>> = roots.iter().map(|&a| rs.coords(a).to_vec()).collect();
    IntMatrix::from_columns(&cols)
}

fn integral(m: RatMatrix, what: &'static str) -> Result<IntMatrix> {
    m.to_int().ok_or_else(|| {
        cross_check(what, format!("denominator {} in a form that must be integral", m.max_denominator()))
    })
}

/// The form determined by `⟨β_i^Π, α_j^Π⟩ = δ_ij`: `G = (Bᵀ)⁻¹ A⁻¹`.
pub fn euler_form_from_pi(ctx: &CoxeterContext, pi: &SimpleSystem) -> Result<EulerTable> {
    let rs = ctx.root_system();
    let beta = beta_family(ctx, pi)?;
    let a = RatMatrix::from_int(&columns(rs, pi.base()));
    let b = RatMatrix::from_int(&columns(rs, &beta.beta));
    let gram = b.transpose().inverse()?.mul(&a.inverse()?);
    table_from_form(ctx, EulerForm::from_gram(integral(gram, "euler form from Π")?))
}

/// `⟨x, y⟩ = (x, (1−C⁻¹)⁻¹ y) = ((1−C)⁻¹ x, y)`, both evaluated and compared.
pub fn euler_form_closed(ctx: &CoxeterContext) -> Result<EulerTable> {
    let rs = ctx.root_system();
    let r = rs.rank();
    let cartan = RatMatrix::from_int(rs.cartan());
    let one = IntMatrix::identity(r);
    let c = ctx.matrix();
    let c_inv = rs.matrix_of(ctx.inverse());
    let right = cartan.mul(&RatMatrix::from_int(&one.sub(&c_inv)).inverse()?);
    let left = RatMatrix::from_int(&one.sub(&c))
        .inverse()?
        .transpose()
        .mul(&cartan);
    let right = integral(right, "closed euler form")?;
    let left = integral(left, "closed euler form")?;
    if right != left {
        return Err(cross_check("closed euler form", "the two closed forms differ"));
    }
    table_from_form(ctx, EulerForm::from_gram(right))
}

/// Fundamental weights `ω_i^Π` as columns in reference coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalWeights {
    pub weights: RatMatrix,
}

impl FundamentalWeights {
    pub fn weight(&self, i: usize) -> Vec<BigRational> {
        self.weights.column(i)
    }
}

/// Solves `(ω_i, α_j) = δ_ij` and checks `(1−C)ω_i = β_i` and
/// `|det(1−C)| = det(Cartan) = [P : Q]`.
pub fn fundamental_weights(ctx: &CoxeterContext, pi: &SimpleSystem) -> Result<FundamentalWeights> {
    let rs = ctx.root_system();
    let r = rs.rank();
    let a = columns(rs, pi.base());
    let weights = RatMatrix::from_int(&rs.cartan().mul(&a)).inverse()?.transpose();
    let beta = beta_family(ctx, pi)?;
    let one_minus_c = IntMatrix::identity(r).sub(&ctx.matrix());
    let image = RatMatrix::from_int(&one_minus_c).mul(&weights);
    if image != RatMatrix::from_int(&columns(rs, &beta.beta)) {
        return Err(cross_check("fundamental weights", "(1−C)ω_i differs from β_i"));
    }
    let index = rs.cartan().determinant()?;
    if one_minus_c.determinant()?.abs() != index {
        return Err(cross_check(
            "weight lattice index",
            format!("|det(1−C)| differs from det(Cartan) = {index}"),
        ));
    }
    Ok(FundamentalWeights { weights })
}

/// A change to one seed value of one row of the `Î` recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedPerturbation {
    pub row: IhatVertex,
    pub column: IhatVertex,
    pub delta: i64,
}

/// `⟨q₁, q₂⟩_Î` for all vertex pairs, indexed densely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IhatEulerTable {
    ihat: IhatQuiver,
    values: Vec<i64>,
}

impl IhatEulerTable {
    pub fn ihat(&self) -> &IhatQuiver {
        &self.ihat
    }

    pub fn get(&self, q1: IhatVertex, q2: IhatVertex) -> i64 {
        self.values[self.ihat.index_of(q1) * self.ihat.len() + self.ihat.index_of(q2)]
    }

    pub fn row(&self, q: IhatVertex) -> &[i64] {
        let n = self.ihat.len();
        let k = self.ihat.index_of(q);
        &self.values[k * n..(k + 1) * n]
    }

    /// `⟨q₁, q₂⟩_Î = ⟨Φ⁻¹q₁, Φ⁻¹q₂⟩` on every pair.
    pub fn check_pullback(&self, rs: &RootSystem, phi: &PhiMap, form: &EulerForm) -> Result<()> {
        for q1 in self.ihat.vertices() {
            for q2 in self.ihat.vertices() {
                let expected = form.pair_roots(rs, phi.inverse(q1), phi.inverse(q2));
                if self.get(q1, q2) != expected {
                    return Err(cross_check(
                        "euler pullback",
                        format!("⟨{q1}, {q2}⟩ is {} on Î, {expected} on R", self.get(q1, q2)),
                    ));
                }
            }
        }
        Ok(())
    }

    /// `⟨τq₁, τq₂⟩ = ⟨q₁, q₂⟩` on every pair.
    pub fn check_tau_invariance(&self) -> Result<()> {
        let q = &self.ihat;
        for q1 in q.vertices() {
            for q2 in q.vertices() {
                if self.get(q.tau(q1), q.tau(q2)) != self.get(q1, q2) {
                    return Err(cross_check(
                        "euler τ-invariance",
                        format!("fails at ({q1}, {q2})"),
                    ));
                }
            }
        }
        Ok(())
    }
}

fn ihat_row(
    ihat: &IhatQuiver,
    q: IhatVertex,
    perturbation: Option<SeedPerturbation>,
) -> Result<Vec<i64>> {
    let r = ihat.rank();
    let h = ihat.h() as i64;
    let m = q.n as i64;
    // values[i][t] = ⟨q, (i, m + t)⟩ for t ≡ p(i) − m mod 2, t ∈ [0, 2h + 1].
    let width = 2 * h as usize + 2;
    let mut values = vec![vec![0i64; width]; r];
    for (i, row) in values.iter_mut().enumerate() {
        if (ihat.parity(i) + q.n).is_multiple_of(2) {
            row[0] = i64::from(i == q.i);
        } else {
            row[1] = i64::from(ihat.neighbors(q.i).contains(&i));
        }
    }
    if let Some(p) = perturbation.filter(|p| p.row == q) {
        let t = (p.column.n as i64 - m).rem_euclid(2 * h) as usize;
        if t > 1 || p.column.i >= r || !ihat.contains(p.column) {
            return Err(Error::InvalidSeed(format!(
                "{} is not a seed vertex of row {q}",
                p.column
            )));
        }
        values[p.column.i][t] += p.delta;
    }
    let seeds: Vec<[i64; 2]> = values.iter().map(|row| [row[0], row[1]]).collect();
    for t in 2..width {
        for i in 0..r {
            if !(ihat.parity(i) + q.n + t).is_multiple_of(2) {
                continue;
            }
            let mut v = -values[i][t - 2];
            for &j in ihat.neighbors(i) {
                v = v
                    .checked_add(values[j][t - 1])
                    .ok_or(Error::Overflow("euler recursion"))?;
            }
            values[i][t] = v;
        }
    }
    let period = 2 * h as usize;
    for (i, seed) in seeds.iter().enumerate() {
        if values[i][period] != seed[0] || values[i][period + 1] != seed[1] {
            return Err(Error::Wraparound {
                row: q.to_string(),
                detail: format!(
                    "line {} returns as ({}, {}), seeded ({}, {})",
                    i + 1,
                    values[i][period],
                    values[i][period + 1],
                    seed[0],
                    seed[1]
                ),
            });
        }
    }
    let mut out = vec![0i64; ihat.len()];
    for (i, row) in values.iter().enumerate() {
        for (t, &v) in row.iter().enumerate().take(period) {
            if (ihat.parity(i) + q.n + t).is_multiple_of(2) {
                out[ihat.index_of(ihat.at(i, m + t as i64))] = v;
            }
        }
    }
    Ok(out)
}

/// The Euler form on `Î`, computed row by row from
/// `⟨(i,n),(j,n)⟩ = δ_ij`, `⟨(i,n),(j,n+1)⟩ = n_ij` and the mesh recursion,
/// with the seed levels regenerated after one period.
pub fn euler_form_ihat(ihat: &IhatQuiver, exec: Execution) -> Result<IhatEulerTable> {
    euler_form_ihat_perturbed(ihat, exec, None)
}

/// As [`euler_form_ihat`] with one seed value changed.
pub fn euler_form_ihat_perturbed(
    ihat: &IhatQuiver,
    exec: Execution,
    perturbation: Option<SeedPerturbation>,
) -> Result<IhatEulerTable> {
    let rows = exec.try_map(&ihat.vertices(), |&q| ihat_row(ihat, q, perturbation))?;
    Ok(IhatEulerTable {
        ihat: ihat.clone(),
        values: rows.concat(),
    })
}

/// Outcome of [`symmetrized_form_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetrizedCheck {
    /// Gram matrix of `(x,y)_Î` on the slice `{(i, p(i))}`.
    pub gram: IntMatrix,
    pub leading_minors: Vec<i64>,
    pub positive_definite: bool,
    pub congruent_to_cartan: bool,
    pub all_norms_two: bool,
}

impl SymmetrizedCheck {
    pub fn passed(&self) -> bool {
        self.positive_definite && self.congruent_to_cartan && self.all_norms_two
    }
}

/// Symmetrizes the `Î` form on the slice at levels `p(i)`, checks positive
/// definiteness, `UᵀGU = Cartan` for the unimodular `U` expressing simple
/// roots in the slice, and `(q, q) = 2` everywhere.
pub fn symmetrized_form_check(
    rs: &RootSystem,
    table: &IhatEulerTable,
) -> Result<SymmetrizedCheck> {
    let ihat = table.ihat();
    let r = ihat.rank();
    let slice: Vec<IhatVertex> = (0..r)
        .map(|i| IhatVertex {
            i,
            n: ihat.parity(i),
        })
        .collect();
    let mut gram = IntMatrix::zeros(r, r);
    for (a, &x) in slice.iter().enumerate() {
        for (b, &y) in slice.iter().enumerate() {
            gram[(a, b)] = table.get(x, y) + table.get(y, x);
        }
    }
    let leading_minors = gram.leading_minors()?;
    let positive_definite = leading_minors.iter().all(|&d| d > 0);
    // Arrows of the slice go from even to odd lines: α_i = β_i − Σ_{j→i} β_j.
    let mut u = IntMatrix::identity(r);
    for i in 0..r {
        if ihat.parity(i) == 1 {
            for &j in ihat.neighbors(i) {
                u[(j, i)] = -1;
            }
        }
    }
    let congruent_to_cartan =
        u.is_unimodular()? && u.transpose().mul(&gram).mul(&u) == *rs.cartan();
    let all_norms_two = ihat.vertices().into_iter().all(|q| 2 * table.get(q, q) == 2);
    Ok(SymmetrizedCheck {
        gram,
        leading_minors,
        positive_definite,
        congruent_to_cartan,
        all_norms_two,
    })
}

/// The three computations of the Euler form compared with each other and
/// with the `Î` table pulled back through `Φ`.
pub fn three_way_agreement(ctx: &CoxeterContext, exec: Execution) -> Result<EulerTable> {
    let from_pi = euler_form_from_pi(ctx, ctx.seed())?;
    let closed = euler_form_closed(ctx)?;
    if from_pi != closed {
        return Err(cross_check("euler agreement", "form from Π differs from closed form"));
    }
    let phi = build_phi(ctx, ctx.seed())?;
    let table = euler_form_ihat(phi.ihat(), exec)?;
    table.check_pullback(ctx.root_system(), &phi, &closed.form)?;
    Ok(closed)
}

/// `(1 − C⁻¹)⁻¹` as an exact rational matrix; its denominators divide
/// `det(1 − C⁻¹)`.
pub fn resolvent(ctx: &CoxeterContext) -> Result<RatMatrix> {
    let r = ctx.rank();
    let c_inv = ctx.root_system().matrix_of(ctx.inverse());
    RatMatrix::from_int(&IntMatrix::identity(r).sub(&c_inv)).inverse()
}
