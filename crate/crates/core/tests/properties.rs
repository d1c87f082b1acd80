use std::sync::{Arc, OnceLock};

use arq_core::arq::{build_phi, height_of, HeightFunction, MeshLattice, mesh_relation};
use arq_core::coxeter::{
    beta_after_reflection, coxeter_from_orientation, enumerate_compatible, orientation_of,
    CoxeterContext, Orientation,
};
use arq_core::quiverrep::euler_form_rep;
use arq_core::rootsys::{reduced_word, weyl_length, DescentRule};
use arq_core::{Execution, RootSystem, SimpleSystem, WeylElement};
use proptest::prelude::*;

const TYPES: [&str; 6] = ["A3", "A4", "D4", "D5", "E6", "A6"];

struct Fixture {
    ctx: CoxeterContext,
    compatible: Vec<SimpleSystem>,
}

fn fixtures() -> &'static [Fixture] {
    static CELL: OnceLock<Vec<Fixture>> = OnceLock::new();
    CELL.get_or_init(|| {
        TYPES
            .iter()
            .map(|name| {
                let rs = Arc::new(RootSystem::new(name.parse().unwrap()));
                let pi = SimpleSystem::reference(&rs);
                let omega = Orientation::all(&rs).swap_remove(1);
                let ctx = coxeter_from_orientation(&rs, &pi, &omega).unwrap();
                let compatible = enumerate_compatible(&ctx, Execution::default()).unwrap();
                Fixture { ctx, compatible }
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduced_words_have_weyl_length(t in 0..TYPES.len(), letters in prop::collection::vec(0usize..8, 0..30)) {
        let f = &fixtures()[t];
        let rs = f.ctx.root_system();
        let pi = SimpleSystem::reference(rs);
        let word: Vec<usize> = letters.into_iter().map(|i| i % rs.rank()).collect();
        let w = WeylElement::from_word(rs, &pi, &word);
        let len = weyl_length(rs, &pi, &w);
        prop_assert!(len <= word.len());
        prop_assert_eq!(len % 2, word.len() % 2);
        for rule in [DescentRule::LeftLowest, DescentRule::RightHighest] {
            let reduced = reduced_word(rs, &pi, &w, rule);
            prop_assert_eq!(reduced.len(), len);
            prop_assert_eq!(WeylElement::from_word(rs, &pi, &reduced), w.clone());
        }
    }

    #[test]
    fn reflection_walks_preserve_phi(t in 0..TYPES.len(), start in any::<prop::sample::Index>(), steps in prop::collection::vec(any::<prop::sample::Index>(), 1..8)) {
        let f = &fixtures()[t];
        let ctx = &f.ctx;
        let mut pi = start.get(&f.compatible).clone();
        let phi = build_phi(ctx, &pi).unwrap();
        for step in steps {
            let omega = orientation_of(ctx, &pi).unwrap();
            let candidates: Vec<usize> = omega.sinks().into_iter().chain(omega.sources()).collect();
            let i = *step.get(&candidates);
            let before = height_of(ctx, &pi).unwrap();
            let (next, _) = beta_after_reflection(ctx, &pi, i).unwrap();
            let after = height_of(ctx, &next).unwrap();
            let period = 2 * ctx.h();
            let delta = if omega.is_sink(i) { period - 2 } else { 2 };
            for j in 0..ctx.rank() {
                let expected = if j == i { (before.get(j) + delta) % period } else { before.get(j) };
                prop_assert_eq!(after.get(j), expected);
            }
            prop_assert_eq!(build_phi(ctx, &next).unwrap(), phi.clone());
            pi = next;
        }
    }

    #[test]
    fn lattice_reduction_is_linear(t in 0..TYPES.len(), hf in any::<prop::sample::Index>(), coeffs in prop::collection::vec((any::<prop::sample::Index>(), -3i64..4), 1..6)) {
        let f = &fixtures()[t];
        let ihat = build_phi(&f.ctx, f.ctx.seed()).unwrap().ihat().clone();
        let reference: HeightFunction = height_of(&f.ctx, hf.get(&f.compatible)).unwrap();
        let lattice = MeshLattice::new(&ihat, &reference).unwrap();
        let vertices = ihat.vertices();
        let combo: Vec<_> = coeffs.iter().map(|(v, c)| (*v.get(&vertices), *c)).collect();
        let whole = lattice.reduce(&combo).coords;
        let mut summed = vec![0; ihat.rank()];
        for &(v, c) in &combo {
            for (s, x) in summed.iter_mut().zip(lattice.reduce(&[(v, 1)]).coords) {
                *s += c * x;
            }
        }
        prop_assert_eq!(&whole, &summed);
        let (v, _) = combo[0];
        let mut with_mesh = combo.clone();
        with_mesh.extend(mesh_relation(&ihat, v).into_iter().map(|(w, c)| (w, 2 * c)));
        prop_assert_eq!(lattice.reduce(&with_mesh).coords, whole);
    }

    #[test]
    fn rep_form_symmetrizes_to_cartan(t in 0..TYPES.len(), o in any::<prop::sample::Index>(), x in prop::collection::vec(-4i64..5, 8), y in prop::collection::vec(-4i64..5, 8)) {
        let f = &fixtures()[t];
        let rs = f.ctx.root_system();
        let r = rs.rank();
        let omega = o.get(&Orientation::all(rs)).clone();
        let (x, y) = (&x[..r], &y[..r]);
        let sym = euler_form_rep(&omega, x, y) + euler_form_rep(&omega, y, x);
        prop_assert_eq!(sym, rs.cartan().bilinear(x, y));
    }
}
