//! Verification suites. Each suite returns a [`Verdict`]; library errors
//! inside a suite become failing verdicts carrying the error text.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arq::{
    all_height_functions, build_ihat, build_phi, check_involution, height_of, nakayama_ihat,
    presentation_structure, simple_system_from_height, w0_word, MeshLattice,
};
use crate::coxeter::{
    beta_family, coxeter_from_orientation, enumerate_compatible, is_compatible, orientation_of,
    CoxeterContext, Orientation,
};
use crate::error::Result;
use crate::euler::{
    euler_form_closed, euler_form_from_pi, euler_form_ihat, fundamental_weights,
    symmetrized_form_check,
};
use crate::par::Execution;
use crate::quiverrep::{
    ar_quiver, build_zi, check_covering_morphism, default_window, dimension_multiset,
    verify_commutative_diagram, verify_euler_identification, CoveringMap,
};
use crate::rootsys::{
    all_simple_systems, enumerate_weyl_group, longest_element, SimpleSystem, ENUMERATION_CAP,
};

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub skipped: bool,
    pub detail: String,
}

impl Verdict {
    pub fn pass(name: &str) -> Self {
        Self::pass_with(name, String::new())
    }

    pub fn pass_with(name: &str, detail: String) -> Self {
        Verdict {
            name: name.to_string(),
            passed: true,
            skipped: false,
            detail,
        }
    }

    pub fn fail(name: &str, detail: String) -> Self {
        Verdict {
            name: name.to_string(),
            passed: false,
            skipped: false,
            detail,
        }
    }

    /// Counts as passing; the reason is kept for display.
    pub fn skip(name: &str, reason: String) -> Self {
        Verdict {
            name: name.to_string(),
            passed: true,
            skipped: true,
            detail: reason,
        }
    }

    fn from_result(name: &str, result: Result<Verdict>) -> Self {
        result.unwrap_or_else(|e| Verdict::fail(name, e.to_string()))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match (self.passed, self.skipped) {
            (_, true) => "SKIP",
            (true, false) => "PASS",
            (false, false) => "FAIL",
        };
        write!(f, "{status} {}", self.name)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

/// Options shared by the suites.
#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Upper bound on compatible systems or samples visited per suite.
    pub sample_limit: usize,
    pub exec: Execution,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0,
            sample_limit: 400,
            exec: Execution::default(),
        }
    }
}

/// Deterministic sample of at most `limit` items, kept in their original order.
pub fn sample_sorted<T: Clone>(items: &[T], limit: usize, seed: u64) -> Vec<T> {
    if items.len() <= limit {
        return items.to_vec();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = sample(&mut rng, items.len(), limit).into_vec();
    picked.sort_unstable();
    picked.into_iter().map(|k| items[k].clone()).collect()
}

fn oracle_skipped(name: &str, ctx: &CoxeterContext) -> Option<Verdict> {
    let order = ctx.root_system().dynkin().weyl_order();
    (order > ENUMERATION_CAP).then(|| {
        Verdict::skip(
            name,
            format!("oracle skipped: |W| exceeds cap ({order} > {ENUMERATION_CAP})"),
        )
    })
}

fn suite_root_system(ctx: &CoxeterContext) -> Result<Verdict> {
    const NAME: &str = "root system";
    let rs = ctx.root_system();
    let d = rs.dynkin();
    if rs.len() != d.root_count() || rs.len() != rs.rank() * rs.coxeter_number() {
        return Ok(Verdict::fail(NAME, format!("|R| = {}", rs.len())));
    }
    if ctx.h() != d.coxeter_number() {
        return Ok(Verdict::fail(NAME, format!("order of C is {}", ctx.h())));
    }
    for a in 0..rs.len() {
        if rs.inner_roots(a, a) != 2 {
            return Ok(Verdict::fail(NAME, format!("root {a} has norm ≠ 2")));
        }
    }
    Ok(Verdict::pass_with(
        NAME,
        format!("|R| = {}, h = {}", rs.len(), ctx.h()),
    ))
}

fn suite_weyl_oracle(ctx: &CoxeterContext, opts: VerifyOptions) -> Result<Verdict> {
    const NAME: &str = "compatible systems (brute force)";
    if let Some(v) = oracle_skipped(NAME, ctx) {
        return Ok(v);
    }
    let rs = ctx.root_system();
    let group = enumerate_weyl_group(rs, ENUMERATION_CAP, opts.exec)?;
    let brute: BTreeSet<Vec<usize>> = all_simple_systems(rs, &group)
        .into_iter()
        .filter(|p| is_compatible(ctx, p).is_some())
        .map(|p| p.base().to_vec())
        .collect();
    let closure: BTreeSet<Vec<usize>> = enumerate_compatible(ctx, opts.exec)?
        .into_iter()
        .map(|p| p.base().to_vec())
        .collect();
    if brute != closure {
        let extra = brute.symmetric_difference(&closure).next().cloned();
        return Ok(Verdict::fail(
            NAME,
            format!("sets differ, e.g. at base {extra:?}"),
        ));
    }
    let incompatible = group.len() - brute.len();
    Ok(Verdict::pass_with(
        NAME,
        format!("{} of {} simple systems compatible, {incompatible} not", brute.len(), group.len()),
    ))
}

fn suite_compatible_count(ctx: &CoxeterContext, opts: VerifyOptions) -> Result<Verdict> {
    const NAME: &str = "compatible count";
    let expected = ctx.h() << (ctx.rank() - 1);
    let got = enumerate_compatible(ctx, opts.exec)?.len();
    Ok(if got == expected {
        Verdict::pass_with(NAME, format!("{got} = h·2^(r−1)"))
    } else {
        Verdict::fail(NAME, format!("{got}, expected {expected}"))
    })
}

fn sampled_compatible(ctx: &CoxeterContext, opts: VerifyOptions) -> Result<Vec<SimpleSystem>> {
    let all = enumerate_compatible(ctx, opts.exec)?;
    Ok(sample_sorted(&all, opts.sample_limit, opts.seed))
}

fn suite_phi(ctx: &CoxeterContext, opts: VerifyOptions) -> Result<Verdict> {
    const NAME: &str = "phi canonicity";
    let systems = sampled_compatible(ctx, opts)?;
    let reference = build_phi(ctx, ctx.canonical_simple_system())?;
    let maps = opts.exec.try_map(&systems, |pi| build_phi(ctx, pi))?;
    for (pi, phi) in systems.iter().zip(&maps) {
        if *phi != reference {
            return Ok(Verdict::fail(NAME, format!("Φ differs for {pi:?}")));
        }
    }
    Ok(Verdict::pass_with(NAME, format!("{} systems", systems.len())))
}

fn suite_heights(ctx: &CoxeterContext, opts: VerifyOptions) -> Result<Verdict> {
    const NAME: &str = "height functions";
    let ihat = build_ihat(ctx.root_system());
    let all = all_height_functions(&ihat);
    let picked = sample_sorted(&all, opts.sample_limit, opts.seed);
    let systems = opts
        .exec
        .try_map(&picked, |hf| simple_system_from_height(ctx, hf))?;
    let distinct: BTreeSet<Vec<usize>> = systems.iter().map(|p| p.base().to_vec()).collect();
    if distinct.len() != picked.len() {
        return Ok(Verdict::fail(NAME, "two height functions share a simple system".into()));
    }
    Ok(Verdict::pass_with(
        NAME,
        format!("{} of {} round-tripped", picked.len(), all.len()),
    ))
}

fn suite_nakayama(ctx: &CoxeterContext) -> Result<Verdict> {
    const NAME: &str = "nakayama";
    let rs = ctx.root_system();
    let inv = check_involution(ctx, ctx.seed())?;
    if inv != rs.opposition_involution() {
        return Ok(Verdict::fail(NAME, "involution depends on Π".into()));
    }
    let phi = build_phi(ctx, ctx.seed())?;
    for a in 0..rs.len() {
        let lhs = phi.apply(rs.negate(a));
        let rhs = nakayama_ihat(phi.ihat(), &inv, phi.apply(a));
        if lhs != rhs {
            return Ok(Verdict::fail(NAME, format!("Φ(−α) = {lhs}, ν(Φ(α)) = {rhs} at root {a}")));
        }
    }
    Ok(Verdict::pass(NAME))
}

fn suite_w0(ctx: &CoxeterContext, opts: VerifyOptions) -> Result<Verdict> {
    const NAME: &str = "longest element words";
    let systems = sampled_compatible(ctx, opts)?;
    opts.exec.try_map(&systems, |pi| w0_word(ctx, pi))?;
    let rs = ctx.root_system();
    // Bipartite orientation: w₀ = C^{h/2} when h is even.
    if ctx.h().is_multiple_of(2) {
        let bip = coxeter_from_orientation(
            ctx.root_system_arc(),
            ctx.seed(),
            &Orientation::bipartite(rs, true),
        )?;
        if bip.element().pow(ctx.h() / 2) != longest_element(rs, ctx.seed()) {
            return Ok(Verdict::fail(NAME, "w₀ ≠ C^{h/2} for a bipartite C".into()));
        }
    }
    Ok(Verdict::pass_with(NAME, format!("{} systems", systems.len())))
}

fn suite_euler(ctx: &CoxeterContext, opts: VerifyOptions) -> Result<Verdict> {
    const NAME: &str = "euler form";
    let closed = euler_form_closed(ctx)?;
    for pi in sample_sorted(&enumerate_compatible(ctx, opts.exec)?, 16, opts.seed) {
        if euler_form_from_pi(ctx, &pi)? != closed {
            return Ok(Verdict::fail(NAME, format!("form from {pi:?} differs from closed form")));
        }
        fundamental_weights(ctx, &pi)?;
    }
    closed.form.check_serre_duality(ctx)?;
    closed.form.check_symmetrization(ctx.root_system())?;
    closed.form.check_c_invariance(ctx)?;
    let phi = build_phi(ctx, ctx.seed())?;
    let table = euler_form_ihat(phi.ihat(), opts.exec)?;
    table.check_pullback(ctx.root_system(), &phi, &closed.form)?;
    table.check_tau_invariance()?;
    let sym = symmetrized_form_check(ctx.root_system(), &table)?;
    if !sym.passed() {
        return Ok(Verdict::fail(NAME, format!("symmetrized form: {sym:?}")));
    }
    Ok(Verdict::pass(NAME))
}

fn suite_lattice(ctx: &CoxeterContext, opts: VerifyOptions) -> Result<Verdict> {
    const NAME: &str = "lattice presentation";
    let rs = ctx.root_system();
    let ihat = build_ihat(rs);
    let (rank, torsion) = presentation_structure(&ihat)?;
    if rank != rs.rank() || !torsion.is_empty() {
        return Ok(Verdict::fail(NAME, format!("free rank {rank}, torsion {torsion:?}")));
    }
    let reference = height_of(ctx, ctx.seed())?;
    let lattice = MeshLattice::new(&ihat, &reference)?;
    let phi = build_phi(ctx, ctx.seed())?;
    let omega = orientation_of(ctx, ctx.seed())?;
    let roots: Vec<usize> = (0..rs.len()).collect();
    for a in sample_sorted(&roots, 100, opts.seed) {
        let coords = ctx.seed().coords_of(rs, a);
        let expected: Vec<i64> = (0..rs.rank())
            .map(|k| coords[k] - omega.successors(k).iter().map(|&j| coords[j]).sum::<i64>())
            .collect();
        let got = lattice.reduce(&[(phi.apply(a), 1)]).coords;
        if got != expected {
            return Ok(Verdict::fail(NAME, format!("root {a}: {got:?} vs {expected:?}")));
        }
    }
    let beta = beta_family(ctx, ctx.seed())?;
    if beta.beta.iter().map(|&b| phi.apply(b)).collect::<Vec<_>>() != reference.slice() {
        return Ok(Verdict::fail(NAME, "β does not land on the reference slice".into()));
    }
    Ok(Verdict::pass(NAME))
}

fn suite_representations(ctx: &CoxeterContext, opts: VerifyOptions) -> Result<Verdict> {
    const NAME: &str = "representations";
    let rs = ctx.root_system();
    let zi = build_zi(rs, default_window(rs.dynkin()))?;
    let positive: Vec<Vec<i64>> = (0..rs.num_positive()).map(|a| rs.coords(a).to_vec()).collect();
    let expected: BTreeSet<Vec<i64>> = positive.iter().cloned().collect();
    for omega in Orientation::all(rs) {
        let ar = ar_quiver(&zi, &omega)?;
        let dims = dimension_multiset(&ar);
        if ar.len() != rs.num_positive()
            || dims.values().any(|&c| c != 1)
            || dims.keys().cloned().collect::<BTreeSet<_>>() != expected
        {
            return Ok(Verdict::fail(NAME, format!("dimension vectors for {omega}")));
        }
    }
    let systems = sample_sorted(&enumerate_compatible(ctx, opts.exec)?, 24, opts.seed);
    for pi in &systems {
        let morphism = check_covering_morphism(&zi, &CoveringMap::new(ctx, pi)?);
        if !morphism.passed {
            return Ok(morphism);
        }
        for v in [
            verify_commutative_diagram(ctx, pi)?,
            verify_euler_identification(ctx, pi)?,
        ] {
            if !v.passed {
                return Ok(Verdict::fail(NAME, format!("{}: {}", v.name, v.detail)));
            }
        }
    }
    Ok(Verdict::pass_with(
        NAME,
        format!("{} orientations, {} systems", 1usize << rs.edges().len(), systems.len()),
    ))
}

/// Runs every suite for the Coxeter element of `ctx`.
pub fn run_all(ctx: &CoxeterContext, opts: VerifyOptions) -> Vec<Verdict> {
    vec![
        Verdict::from_result("root system", suite_root_system(ctx)),
        Verdict::from_result("compatible count", suite_compatible_count(ctx, opts)),
        Verdict::from_result("compatible systems (brute force)", suite_weyl_oracle(ctx, opts)),
        Verdict::from_result("phi canonicity", suite_phi(ctx, opts)),
        Verdict::from_result("height functions", suite_heights(ctx, opts)),
        Verdict::from_result("nakayama", suite_nakayama(ctx)),
        Verdict::from_result("longest element words", suite_w0(ctx, opts)),
        Verdict::from_result("euler form", suite_euler(ctx, opts)),
        Verdict::from_result("lattice presentation", suite_lattice(ctx, opts)),
        Verdict::from_result("representations", suite_representations(ctx, opts)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::coxeter_from_word;
    use crate::rootsys::RootSystem;
    use std::sync::Arc;

    fn standard(name: &str) -> CoxeterContext {
        let rs = Arc::new(RootSystem::new(name.parse().unwrap()));
        let pi = SimpleSystem::reference(&rs);
        let word: Vec<usize> = (0..rs.rank()).collect();
        coxeter_from_word(&rs, &pi, &word).unwrap()
    }

    #[test]
    fn small_types_pass() {
        for name in ["A1", "A2", "A3", "D4"] {
            for v in run_all(&standard(name), VerifyOptions::default()) {
                assert!(v.passed && !v.skipped, "{name}: {v}");
            }
        }
    }

    #[test]
    fn oracle_is_skipped_above_cap() {
        let ctx = standard("E7");
        let v = suite_weyl_oracle(&ctx, VerifyOptions::default()).unwrap();
        assert!(v.skipped);
        assert!(v.detail.starts_with("oracle skipped: |W| exceeds cap"));
    }

    #[test]
    fn sampling_is_deterministic() {
        let items: Vec<usize> = (0..1000).collect();
        let a = sample_sorted(&items, 10, 7);
        assert_eq!(a, sample_sorted(&items, 10, 7));
        assert_ne!(a, sample_sorted(&items, 10, 8));
        assert_eq!(sample_sorted(&items[..5], 10, 7), items[..5].to_vec());
    }

    #[test]
    fn verdict_display() {
        assert_eq!(Verdict::pass("x").to_string(), "PASS x");
        assert_eq!(Verdict::fail("x", "y".into()).to_string(), "FAIL x: y");
    }
}
