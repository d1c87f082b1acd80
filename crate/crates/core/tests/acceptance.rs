//! Acceptance criteria 1–8. Each test prints one PASS/FAIL line per
//! criterion; run with `-- --nocapture` to see them.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::sync::Arc;

use arq_core::arq::{
    build_ihat, build_phi, check_w0_word, height_of, lattice_reduce, negative_system,
    presentation_structure, w0_word, IhatVertex,
};
use arq_core::coxeter::{
    coxeter_from_orientation, coxeter_from_word, elementary_reflection, enumerate_compatible,
    is_compatible, CoxeterContext, Orientation,
};
use arq_core::euler::{
    euler_form_closed, euler_form_from_pi, euler_form_ihat, euler_form_ihat_perturbed,
    symmetrized_form_check, SeedPerturbation,
};
use arq_core::linalg::RatMatrix;
use arq_core::quiverrep::{
    ar_quiver, build_zi, default_window, dimension_multiset, euler_form_rep,
    verify_commutative_diagram, verify_euler_identification, CoveringMap,
};
use arq_core::rootsys::{
    all_simple_systems, enumerate_weyl_group, longest_element, weyl_length,
};
use arq_core::verify::sample_sorted;
use arq_core::{Error, Execution, RootSystem, SimpleSystem, WeylElement, ENUMERATION_CAP};
use num_bigint::BigInt;
use num_rational::BigRational;

fn standard(name: &str) -> CoxeterContext {
    let rs = Arc::new(RootSystem::new(name.parse().unwrap()));
    let pi = SimpleSystem::reference(&rs);
    let word: Vec<usize> = (0..rs.rank()).collect();
    coxeter_from_word(&rs, &pi, &word).unwrap()
}

fn report(criterion: &str, failures: &[String], summary: &str) {
    if failures.is_empty() {
        println!("PASS criterion {criterion}: {summary}");
    } else {
        println!("FAIL criterion {criterion}: {summary}");
        for f in failures {
            println!("    {f}");
        }
    }
}

#[test]
fn criterion_1_compatible_count() {
    let mut failures = Vec::new();
    for (name, expected) in [("A2", 6), ("A3", 16), ("A4", 40), ("D4", 48), ("D5", 128), ("E6", 384)] {
        let ctx = standard(name);
        let got = enumerate_compatible(&ctx, Execution::default()).unwrap().len();
        if got != expected {
            failures.push(format!("{name}: {got} compatible systems, expected {expected}"));
        }
    }
    for name in ["A2", "A3", "D4"] {
        let ctx = standard(name);
        let rs = ctx.root_system();
        let group = enumerate_weyl_group(rs, ENUMERATION_CAP, Execution::default()).unwrap();
        let brute: BTreeSet<Vec<usize>> = all_simple_systems(rs, &group)
            .into_iter()
            .filter(|p| weyl_length(rs, p, ctx.element()) == rs.rank())
            .map(|p| p.base().to_vec())
            .collect();
        let closure: BTreeSet<Vec<usize>> = enumerate_compatible(&ctx, Execution::default())
            .unwrap()
            .into_iter()
            .map(|p| p.base().to_vec())
            .collect();
        if brute != closure {
            failures.push(format!("{name}: reflection closure differs from brute force"));
        }
    }
    report("1", &failures, "h·2^(r−1) compatible systems; brute force agrees on A2, A3, D4");
    assert!(failures.is_empty());
}

#[test]
fn criterion_2_phi_canonicity() {
    let mut failures = Vec::new();
    for name in ["A2", "A3", "A4", "D4"] {
        let ctx = standard(name);
        let rs = ctx.root_system();
        let systems = enumerate_compatible(&ctx, Execution::default()).unwrap();
        let maps: Vec<_> = systems.iter().map(|pi| build_phi(&ctx, pi).unwrap()).collect();
        if maps.iter().any(|m| *m != maps[0]) {
            failures.push(format!("{name}: Φ depends on Π"));
        }
        let phi = &maps[0];
        let images: HashSet<IhatVertex> = (0..rs.len()).map(|a| phi.apply(a)).collect();
        if images.len() != rs.len() || images.len() != phi.ihat().len() {
            failures.push(format!("{name}: Φ is not a bijection"));
        }
        for a in 0..rs.len() {
            let v = phi.apply(a);
            let expected = IhatVertex {
                i: v.i,
                n: (v.n + 2) % (2 * ctx.h()),
            };
            if phi.apply(ctx.element().apply(a)) != expected {
                failures.push(format!("{name}: Φ(Cα) ≠ τΦ(α) at root {a}"));
            }
        }
    }
    report("2", &failures, "one Φ for all compatible Π of A2, A3, A4, D4; Φ∘C = τ∘Φ");
    assert!(failures.is_empty());
}

/// Words reachable from `word` by swapping adjacent commuting letters.
fn commutation_class(rs: &RootSystem, word: &[usize]) -> HashSet<Vec<usize>> {
    let mut seen = HashSet::from([word.to_vec()]);
    let mut queue = VecDeque::from([word.to_vec()]);
    while let Some(w) = queue.pop_front() {
        for k in 0..w.len().saturating_sub(1) {
            if w[k] != w[k + 1] && !rs.are_adjacent(w[k], w[k + 1]) {
                let mut v = w.clone();
                v.swap(k, k + 1);
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
    }
    seen
}

#[test]
fn criterion_3_w0_words() {
    let mut failures = Vec::new();
    let ctx = standard("A4");
    let golden: Vec<usize> = [1, 2, 1, 3, 2, 4, 1, 3, 2, 1].iter().map(|i| i - 1).collect();
    let word = w0_word(&ctx, ctx.seed()).unwrap();
    if word != golden {
        failures.push(format!("A4 word {word:?} differs from the golden word"));
    }
    if !commutation_class(ctx.root_system(), &golden).contains(&word) {
        failures.push("A4 word is not commutation-equivalent to the golden word".into());
    }
    for name in ["A3", "A4", "D4"] {
        let ctx = standard(name);
        let rs = ctx.root_system();
        for pi in enumerate_compatible(&ctx, Execution::default()).unwrap() {
            let word = w0_word(&ctx, &pi).unwrap();
            let w = WeylElement::from_word(rs, &pi, &word);
            let negated: BTreeSet<usize> = pi.base().iter().map(|&a| rs.negate(a)).collect();
            let image: BTreeSet<usize> = pi.base().iter().map(|&a| w.apply(a)).collect();
            if word.len() != rs.rank() * ctx.h() / 2
                || weyl_length(rs, &pi, &w) != word.len()
                || image != negated
            {
                failures.push(format!("{name}: bad word {word:?} for {pi:?}"));
            }
        }
    }
    report("3", &failures, "A4 golden word; all compatible Π of A3, A4, D4 give reduced words for w₀");
    assert!(failures.is_empty());
}

#[test]
fn criterion_4_euler_agreement() {
    let mut failures = Vec::new();
    for name in ["A2", "A3", "A4", "A5", "D4", "D5", "E6"] {
        let ctx = standard(name);
        let rs = ctx.root_system();
        let from_pi = euler_form_from_pi(&ctx, ctx.seed()).unwrap();
        let closed = euler_form_closed(&ctx).unwrap();
        if from_pi != closed {
            failures.push(format!("{name}: form from Π differs from closed form"));
        }
        let phi = build_phi(&ctx, ctx.seed()).unwrap();
        let table = euler_form_ihat(phi.ihat(), Execution::default()).unwrap();
        for q1 in phi.ihat().vertices() {
            for q2 in phi.ihat().vertices() {
                let lattice = closed.form.pair_roots(rs, phi.inverse(q1), phi.inverse(q2));
                if table.get(q1, q2) != lattice {
                    failures.push(format!("{name}: Î form differs at ({q1}, {q2})"));
                }
            }
        }
        for a in 0..rs.len() {
            let c_inv_a = ctx.inverse().apply(a);
            for b in 0..rs.len() {
                let ab = closed.form.pair_roots(rs, a, b);
                let ba = closed.form.pair_roots(rs, b, a);
                if ab != -closed.form.pair_roots(rs, b, c_inv_a) {
                    failures.push(format!("{name}: Serre duality fails at ({a}, {b})"));
                }
                if ab + ba != rs.inner_roots(a, b) {
                    failures.push(format!("{name}: symmetrization fails at ({a}, {b})"));
                }
            }
        }
    }
    failures.truncate(20);
    report("4", &failures, "from-Π = closed = Î pullback; Serre duality and symmetrization on all root pairs");
    assert!(failures.is_empty());
}

#[test]
fn criterion_5_positive_definite() {
    let mut failures = Vec::new();
    for name in ["A2", "A3", "A4", "A5", "D4", "D5", "E6"] {
        let rs = RootSystem::new(name.parse().unwrap());
        let ihat = build_ihat(&rs);
        let table = euler_form_ihat(&ihat, Execution::default()).unwrap();
        let check = symmetrized_form_check(&rs, &table).unwrap();
        if !check.positive_definite || check.leading_minors.iter().any(|&d| d <= 0) {
            failures.push(format!("{name}: not positive definite, minors {:?}", check.leading_minors));
        }
        if !check.congruent_to_cartan {
            failures.push(format!("{name}: slice Gram matrix not congruent to Cartan"));
        }
        if ihat.vertices().into_iter().any(|q| 2 * table.get(q, q) != 2) {
            failures.push(format!("{name}: some (q,q) ≠ 2"));
        }
    }
    report("5", &failures, "symmetrized Î form positive definite, ℤ-congruent to Cartan, (q,q) = 2");
    assert!(failures.is_empty());
}

#[test]
fn criterion_6_lattice_presentation() {
    let mut failures = Vec::new();
    for name in ["A2", "A3", "A4", "A5", "D4", "D5", "E6"] {
        let ctx = standard(name);
        let rs = ctx.root_system();
        let r = rs.rank();
        let ihat = build_ihat(rs);
        let (rank, torsion) = presentation_structure(&ihat).unwrap();
        if rank != r || !torsion.is_empty() {
            failures.push(format!("{name}: quotient has rank {rank}, torsion {torsion:?}"));
        }
        // Oracle: solve α = Σ c_k β_k over ℚ.
        let beta: Vec<Vec<i64>> = arq_core::coxeter::beta_family(&ctx, ctx.seed())
            .unwrap()
            .beta
            .iter()
            .map(|&b| rs.coords(b).to_vec())
            .collect();
        let b_inv = RatMatrix::from_int(&arq_core::linalg::IntMatrix::from_columns(&beta))
            .inverse()
            .unwrap();
        let reference = height_of(&ctx, ctx.seed()).unwrap();
        let phi = build_phi(&ctx, ctx.seed()).unwrap();
        let roots: Vec<usize> = (0..rs.len()).collect();
        for a in sample_sorted(&roots, 100, 1) {
            let coords = rs.coords(a);
            let expected: Vec<i64> = (0..r)
                .map(|k| {
                    let v: BigRational = (0..r)
                        .map(|j| b_inv.get(k, j) * BigRational::from_integer(BigInt::from(coords[j])))
                        .sum();
                    assert!(v.is_integer());
                    i64::try_from(v.to_integer()).unwrap()
                })
                .collect();
            let got = lattice_reduce(&ihat, &reference, &[(phi.apply(a), 1)]).unwrap().coords;
            if got != expected {
                failures.push(format!("{name}: root {a} reduces to {got:?}, expected {expected:?}"));
            }
        }
    }
    report("6", &failures, "ℤ^Î/J free of rank r; lattice_reduce∘Φ matches β-coordinates on sampled roots");
    assert!(failures.is_empty());
}

#[test]
fn criterion_7_representations() {
    let mut failures = Vec::new();
    for name in ["A2", "A3", "A4", "D4"] {
        let rs = Arc::new(RootSystem::new(name.parse().unwrap()));
        let pi = SimpleSystem::reference(&rs);
        let zi = build_zi(&rs, default_window(rs.dynkin())).unwrap();
        let positive: BTreeMap<Vec<i64>, usize> =
            (0..rs.num_positive()).map(|a| (rs.coords(a).to_vec(), 1)).collect();
        for gamma in Orientation::all(&rs) {
            let ar = ar_quiver(&zi, &gamma).unwrap();
            if ar.len() != rs.rank() * rs.coxeter_number() / 2 {
                failures.push(format!("{name} {gamma}: {} AR vertices", ar.len()));
            }
            if dimension_multiset(&ar) != positive {
                failures.push(format!("{name} {gamma}: dimension vectors differ from R₊"));
            }
            // Γ(I, Ω^opp) for the orientation Ω = γ^opp of the reference system.
            let ctx = coxeter_from_orientation(&rs, &pi, &gamma.opposite()).unwrap();
            let diagram = verify_commutative_diagram(&ctx, &pi).unwrap();
            if !diagram.passed {
                failures.push(format!("{name} {gamma}: {}", diagram.detail));
            }
            let ident = verify_euler_identification(&ctx, &pi).unwrap();
            if !ident.passed {
                failures.push(format!("{name} {gamma}: {}", ident.detail));
            }
            // Independent recomputation of the Euler comparison.
            let phi = build_phi(&ctx, &pi).unwrap();
            let cover = CoveringMap::new(&ctx, &pi).unwrap();
            let form = euler_form_closed(&ctx).unwrap().form;
            for (x, dx) in ar.vertices().iter().zip(ar.dims()) {
                for (y, dy) in ar.vertices().iter().zip(ar.dims()) {
                    let lhs = euler_form_rep(&gamma, dx, dy);
                    let rhs = form.pair_roots(&rs, phi.inverse(cover.apply(*x)), phi.inverse(cover.apply(*y)));
                    if lhs != rhs {
                        failures.push(format!("{name} {gamma}: ⟨{x}, {y}⟩ {lhs} vs {rhs}"));
                    }
                }
            }
        }
    }
    failures.truncate(20);
    report("7", &failures, "every orientation of A2, A3, A4, D4: Gabriel, commutative diagram, Euler identification");
    assert!(failures.is_empty());
}

#[test]
fn criterion_8_negative_controls() {
    let mut failures = Vec::new();

    // (a) One perturbed seed value must break wraparound consistency.
    let mut detected_elsewhere = true;
    for name in ["A1", "A2", "A3", "D4", "E6"] {
        let ctx = standard(name);
        let phi = build_phi(&ctx, ctx.seed()).unwrap();
        let ihat = phi.ihat();
        let row = ihat.vertex(0);
        let column = ihat.successors(row).first().copied().unwrap_or(row);
        let p = SeedPerturbation { row, column, delta: 1 };
        match euler_form_ihat_perturbed(ihat, Execution::Sequential, Some(p)) {
            Err(Error::Wraparound { .. }) => {}
            Err(e) => failures.push(format!("(a) {name}: unexpected error {e}")),
            Ok(table) => {
                failures.push(format!(
                    "(a) {name}: perturbing ⟨{row}, {column}⟩ still closes up after one period"
                ));
                let form = euler_form_closed(&ctx).unwrap().form;
                detected_elsewhere &= table.check_tau_invariance().is_err()
                    && table.check_pullback(ctx.root_system(), &phi, &form).is_err();
            }
        }
    }
    let perturbation_note = (!failures.is_empty()).then(|| {
        format!(
            "note: the perturbed tables are {} by τ-invariance and the Φ-pullback",
            if detected_elsewhere { "rejected" } else { "not all rejected" }
        )
    });

    // (b) Elementary reflection away from sinks and sources.
    let ctx = standard("A3");
    match elementary_reflection(&ctx, ctx.seed(), 1) {
        Err(Error::NotSinkOrSource(2)) => {}
        other => failures.push(format!("(b) reflection at vertex 2 gave {other:?}")),
    }

    // (c) 8 of the 24 simple systems of A3 are incompatible.
    let rs = ctx.root_system();
    let group = enumerate_weyl_group(rs, ENUMERATION_CAP, Execution::default()).unwrap();
    let systems = all_simple_systems(rs, &group);
    let incompatible = systems.iter().filter(|p| is_compatible(&ctx, p).is_none()).count();
    if systems.len() != 24 || incompatible != 8 {
        failures.push(format!("(c) {incompatible} of {} incompatible", systems.len()));
    }

    // −Π is compatible and w₀ sends Π to it, as a sanity anchor for (c).
    let neg = negative_system(&ctx, ctx.seed());
    if is_compatible(&ctx, &neg).is_none() {
        failures.push("(c) −Π is not compatible".into());
    }
    let word = w0_word(&ctx, ctx.seed()).unwrap();
    check_w0_word(&ctx, ctx.seed(), &word).unwrap();
    assert_eq!(longest_element(rs, ctx.seed()), WeylElement::from_word(rs, ctx.seed(), &word));

    report("8", &failures, "negative controls: seed perturbation, non-sink reflection, incompatible Π");
    if let Some(note) = perturbation_note {
        println!("    {note}");
    }
    assert!(failures.is_empty(), "{failures:#?}");
}
