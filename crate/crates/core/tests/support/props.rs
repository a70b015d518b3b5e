//! Invariants of every module, each checked by a deterministic proptest
//! runner. Shared by the per-property tests and the acceptance runner.

use std::sync::OnceLock;

use bhj_core::brauer::{blowup_ram, delta_functional, ram_hom};
use bhj_core::fan::{extend_blowup, seed_images, seed_rep, verify_kernel};
use bhj_core::hjstring::{cone_weights, determinant, fraction_from_weights, weights_from_fraction};
use bhj_core::lattice::{cross, enumerate_primitive, RationalFunctional, Unimodular};
use bhj_core::mmp::{
    beta_blowup, classify, extract_ray, resolution_chain, terminal_model, zariski_factorize, Verdict,
};
use bhj_core::{
    BlowupWord, Cone, Cover, FanRep, FractionPair, HJString, LatticeVector, LocalConfig, Rat, Rat64, Scalar,
    TorsionHomomorphism, TorsionValue,
};
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::sample::select;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use super::grid::{secondary_grid, strings, type_a_grid, GridPoint};
use super::oracle::{det_full_matrix, primitive_box_scan, BlowupTree, Q};

pub const CASES: u32 = 256;

pub struct Property {
    pub module: &'static str,
    pub name: &'static str,
    pub check: fn(u32) -> Result<usize, String>,
}

/// Every property, in module order. `check` returns the number of cases run.
pub fn all() -> Vec<Property> {
    macro_rules! props {
        ($($module:literal => $name:ident),* $(,)?) => {
            vec![$(Property { module: $module, name: stringify!($name), check: $name }),*]
        };
    }
    props![
        "lattice" => primitive_iff_gcd,
        "lattice" => torsion_order_and_exclusion,
        "lattice" => functional_is_additive,
        "lattice" => torsion_eval_is_homomorphism,
        "lattice" => enumerate_matches_box_scan,
        "lattice" => cross_is_unimodular_invariant,
        "hjstring" => determinant_matches_full_matrix,
        "hjstring" => determinant_increment_identity,
        "hjstring" => blowup_preserves_determinant,
        "hjstring" => fraction_round_trip_exhaustive,
        "hjstring" => cone_weights_determinant_is_cross,
        "fan" => extension_is_unique,
        "fan" => mediants_preserve_kernel,
        "fan" => compatible_function_matches_eval,
        "fan" => left_right_blowups_commute,
        "brauer" => delta_satisfies_adjunction,
        "brauer" => ramification_satisfies_obstruction,
        "brauer" => blowup_ram_matches_mediant,
        "brauer" => zbar_orders_divide_p,
        "mmp" => classify_matches_blowup_tree,
        "mmp" => terminal_round_trip,
        "mmp" => witness_recomputes,
        "mmp" => case_four_split_determinants,
        "mmp" => factorization_keeps_b_positive,
        "mmp" => castelnuovo_contraction_is_unique,
        "mmp" => terminal_model_is_consistent,
    ]
}

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, max_global_rejects: 100_000, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<usize, String>
where
    S::Value: std::fmt::Debug,
{
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())?;
    Ok(cases as usize)
}

fn exhaustive<T>(items: impl IntoIterator<Item = T>, test: impl Fn(T) -> Result<(), String>) -> Result<usize, String> {
    let mut n = 0;
    for item in items {
        test(item)?;
        n += 1;
    }
    Ok(n)
}

fn tv(num: i64, den: i64) -> TorsionValue {
    TorsionValue::new(num, den).expect("admissible torsion value")
}

fn vec_in(r: i64) -> impl Strategy<Value = LatticeVector> {
    (-r..=r, -r..=r).prop_map(|(a, b)| LatticeVector::new(a, b))
}

fn primitive(r: i64) -> impl Strategy<Value = LatticeVector> {
    vec_in(r).prop_filter("primitive", |v| v.is_primitive())
}

fn cone(r: i64) -> impl Strategy<Value = Cone> {
    (primitive(r), primitive(r)).prop_filter_map("non-degenerate", |(u, w)| Cone::new(u, w).ok())
}

fn positive_rat(max_num: i64, max_den: i64) -> impl Strategy<Value = Rat> {
    (1..=max_num, 1..=max_den).prop_map(|(n, d)| Rat::ratio(n, d))
}

fn unimodular() -> impl Strategy<Value = Unimodular> {
    prop::collection::vec((0..3u8, -4i64..=4), 0..6).prop_map(|ops| {
        ops.into_iter().fold(Unimodular::new([[1, 0], [0, 1]]).expect("identity"), |acc, (kind, x)| {
            let step = match kind {
                0 => [[1, x], [0, 1]],
                1 => [[1, 0], [x, 1]],
                _ => [[0, 1], [1, 0]],
            };
            Unimodular::new(step).expect("elementary").compose(&acc)
        })
    })
}

fn strict_string(max_len: usize, max_w: i64) -> impl Strategy<Value = HJString> {
    prop::collection::vec(2..=max_w, 0..=max_len).prop_map(|w| HJString::strict(w).expect("weights >= 2"))
}

/// Seed of a strict string plus a word whose raw entries are reduced into
/// range at each step.
fn seed_and_word(max_len: usize, max_word: usize) -> impl Strategy<Value = (FanRep, BlowupWord)> {
    (strict_string(max_len, 5), prop::collection::vec(any::<u16>(), 0..=max_word)).prop_map(|(s, raw)| {
        let endpoint = *seed_images(s.weights()).last().expect("two images");
        let last = FractionPair::new(endpoint.a, -endpoint.b).expect("normal form endpoint");
        let rep = seed_rep(&s, last).expect("consistent seed");
        let mut len = s.len();
        let word = raw
            .into_iter()
            .map(|x| {
                let node = x as usize % (len + 1);
                len += 1;
                node
            })
            .collect();
        (rep, BlowupWord(word))
    })
}

fn grid_points() -> &'static [GridPoint] {
    static POINTS: OnceLock<Vec<GridPoint>> = OnceLock::new();
    POINTS.get_or_init(|| {
        let mut pts = Vec::new();
        for p in [7, 11] {
            pts.extend(type_a_grid(p, 12).points);
        }
        pts
    })
}

fn secondary_points() -> &'static [GridPoint] {
    static POINTS: OnceLock<Vec<GridPoint>> = OnceLock::new();
    POINTS.get_or_init(|| [7, 11].into_iter().flat_map(|p| secondary_grid(p, 12).points).collect())
}

fn grid_index() -> impl Strategy<Value = usize> {
    0..grid_points().len()
}

/// Indices into the type-A grid (as `Ok`) or the secondary grid (as `Err`)
/// of every configuration classified Terminal.
fn terminal_points() -> &'static [Result<usize, usize>] {
    static IDX: OnceLock<Vec<Result<usize, usize>>> = OnceLock::new();
    IDX.get_or_init(|| {
        let terminal = |pt: &GridPoint| matches!(classify::<Rat64>(&pt.cfg), Ok(Verdict::Terminal { .. }));
        let a = grid_points().iter().enumerate().filter(|(_, pt)| terminal(pt)).map(|(i, _)| Ok(i));
        let s = secondary_points().iter().enumerate().filter(|(_, pt)| terminal(pt)).map(|(i, _)| Err(i));
        a.chain(s).collect()
    })
}

fn terminal_config() -> impl Strategy<Value = &'static GridPoint> {
    select(terminal_points()).prop_map(|i| match i {
        Ok(i) => &grid_points()[i],
        Err(i) => &secondary_points()[i],
    })
}

// ---------------------------------------------------------------- lattice

fn primitive_iff_gcd(cases: u32) -> Result<usize, String> {
    run(cases, vec_in(40), |v| {
        let expected = v != LatticeVector::ZERO && v.a.gcd(&v.b) == 1;
        prop_assert_eq!(v.is_primitive(), expected);
        Ok(())
    })
}

fn torsion_order_and_exclusion(cases: u32) -> Result<usize, String> {
    run(cases, (-200i64..200, 1i64..200), |(num, den)| {
        let t = TorsionValue::new_checked(num, den, &[]).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let g = num.gcd(&den);
        let reduced = if num.rem_euclid(den) == 0 { 1 } else { den / g };
        prop_assert_eq!(t.order(), reduced);
        prop_assert!(t.den() == t.order());
        let excluded: Vec<u64> = vec![2, 3];
        let hit = t.order() % 2 == 0 || t.order() % 3 == 0;
        prop_assert_eq!(TorsionValue::new_checked(num, den, &excluded).is_err(), hit);
        Ok(())
    })
}

fn functional_is_additive(cases: u32) -> Result<usize, String> {
    let s = (cone(9), positive_rat(9, 9), positive_rat(9, 9), (0i64..6, 0i64..6), (0i64..6, 0i64..6));
    run(cases, s, |(c, fu, fw, (x1, x2), (y1, y2))| {
        let f = RationalFunctional::new(c, fu, fw);
        let x = x1 * c.u + x2 * c.w;
        let y = y1 * c.u + y2 * c.w;
        let lhs = f.eval(x + y).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let rhs = f.eval(x).unwrap() + f.eval(y).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(f.eval(c.u).unwrap(), f.value_u.clone());
        prop_assert_eq!(f.eval(c.w).unwrap(), f.value_w.clone());
        Ok(())
    })
}

fn torsion_eval_is_homomorphism(cases: u32) -> Result<usize, String> {
    let value = (1i64..40).prop_flat_map(|d| (0..d).prop_map(move |n| tv(n, d)));
    run(cases, (value.clone(), value, vec_in(50), vec_in(50)), |(z1, z2, x, y)| {
        let h = TorsionHomomorphism::new(z1, z2);
        prop_assert_eq!(h.eval(x + y), h.eval(x) + h.eval(y));
        prop_assert_eq!(h.eval(LatticeVector::E1), z1);
        prop_assert_eq!(h.eval(LatticeVector::E2), z2);
        prop_assert!(h.eval(LatticeVector::ZERO).is_zero());
        Ok(())
    })
}

fn enumerate_matches_box_scan(cases: u32) -> Result<usize, String> {
    let s = (cone(7), (1i64..=6, 1i64..=6), (1i64..=6, 1i64..=6), (1i64..=8, 1i64..=4));
    run(cases, s, |(c, (un, ud), (wn, wd), (bn, bd))| {
        let (fu, fw, bound) = (Rat::ratio(un, ud), Rat::ratio(wn, wd), Rat::ratio(bn, bd));
        let f = RationalFunctional::new(c, fu, fw);
        let mut got: Vec<(i64, i64)> =
            enumerate_primitive(&c, &f, &bound).unwrap().into_iter().map(|v| (v.a, v.b)).collect();
        got.sort();
        let want = primitive_box_scan((c.u.a, c.u.b), (c.w.a, c.w.b), Q::new(un, ud), Q::new(wn, wd), Q::new(bn, bd));
        prop_assert_eq!(got, want);
        Ok(())
    })
}

fn cross_is_unimodular_invariant(cases: u32) -> Result<usize, String> {
    run(cases, (cone(12), unimodular()), |(c, t)| {
        prop_assert_eq!(cross(t.apply(c.u), t.apply(c.w)).abs(), c.cross().abs());
        Ok(())
    })
}

// ---------------------------------------------------------------- hjstring

fn determinant_matches_full_matrix(cases: u32) -> Result<usize, String> {
    run(cases, prop::collection::vec(1i64..=9, 0..=8), |w| {
        prop_assert_eq!(determinant(&w), det_full_matrix(&w));
        Ok(())
    })
}

fn determinant_increment_identity(cases: u32) -> Result<usize, String> {
    let s = prop::collection::vec(1i64..=9, 1..=8).prop_flat_map(|w| {
        let r = w.len();
        (Just(w), 0..r)
    });
    run(cases, s, |(w, i)| {
        let mut bumped = w.clone();
        bumped[i] += 1;
        let expected = det_full_matrix(&w) + det_full_matrix(&w[..i]) * det_full_matrix(&w[i + 1..]);
        prop_assert_eq!(determinant(&bumped), expected);
        Ok(())
    })
}

fn blowup_preserves_determinant(cases: u32) -> Result<usize, String> {
    let s = prop::collection::vec(2i64..=6, 0..=7).prop_flat_map(|w| {
        let r = w.len();
        (Just(w), 0..=r)
    });
    run(cases, s, |(w, node)| {
        let s = HJString::new(w).unwrap();
        let up = s.blowup_at(node).unwrap();
        prop_assert_eq!(up.determinant(), s.determinant());
        prop_assert_eq!(up.weights()[node], 1);
        let down = up.contract_minus_one(node + 1).unwrap();
        prop_assert_eq!(down.weights(), s.weights());
        Ok(())
    })
}

fn fraction_round_trip_exhaustive(_cases: u32) -> Result<usize, String> {
    exhaustive(strings(8, 6), |w| {
        let s = HJString::strict(w.clone()).map_err(|e| e.to_string())?;
        let fp = fraction_from_weights(&s).map_err(|e| e.to_string())?;
        if fp.m() != det_full_matrix(&w) || fp.k() != det_full_matrix(&w[1..]) {
            return Err(format!("{w:?} gave {fp:?}"));
        }
        let back = weights_from_fraction(fp);
        if back.weights() != w.as_slice() {
            return Err(format!("{w:?} -> {fp:?} -> {back}"));
        }
        Ok(())
    })
}

fn cone_weights_determinant_is_cross(cases: u32) -> Result<usize, String> {
    run(cases, cone(25), |c| {
        let s = cone_weights(&c);
        prop_assert!(s.weights().iter().all(|&m| m >= 2));
        prop_assert_eq!(s.determinant(), c.cross().abs());
        Ok(())
    })
}

// ---------------------------------------------------------------- fan

/// Mediant insertion written out directly on a list of images.
fn mediant_walk(images: &[LatticeVector], word: &BlowupWord) -> Vec<LatticeVector> {
    let mut out = images.to_vec();
    for &node in &word.0 {
        let m = LatticeVector::new(out[node].a + out[node + 1].a, out[node].b + out[node + 1].b);
        out.insert(node + 1, m);
    }
    out
}

fn extension_is_unique(cases: u32) -> Result<usize, String> {
    run(cases, seed_and_word(5, 10), |(rep, word)| {
        let a = extend_blowup(&rep, &word).unwrap();
        let b = extend_blowup(&rep, &word).unwrap();
        prop_assert_eq!(&a, &b);
        let walked = mediant_walk(rep.images(), &word);
        prop_assert_eq!(a.images(), walked.as_slice());
        Ok(())
    })
}

fn mediants_preserve_kernel(cases: u32) -> Result<usize, String> {
    run(cases, seed_and_word(5, 10), |(rep, word)| {
        prop_assert!(verify_kernel(&rep));
        let ext = extend_blowup(&rep, &word).unwrap();
        prop_assert!(verify_kernel(&ext));
        for (i, &m) in ext.string().weights().iter().enumerate() {
            let im = ext.images();
            prop_assert_eq!(im[i] - m * im[i + 1] + im[i + 2], LatticeVector::ZERO);
        }
        Ok(())
    })
}

/// Values on `E_0 .. E_{r+1}` of the compatible function with the given end
/// values, then carried through the word by the mediant rule.
fn propagate_compatible(weights: &[i64], ends: (Q, Q), word: &BlowupWord) -> Vec<Q> {
    let r = weights.len();
    // f_i = x s_i + c_i with f_1 = x unknown.
    let mut lin = vec![(Q::zero(), ends.0), (Q::one(), Q::zero())];
    for i in 1..=r {
        let m = Q::from(weights[i - 1]);
        lin.push((lin[i].0 * m - lin[i - 1].0, lin[i].1 * m - lin[i - 1].1));
    }
    let mut vals: Vec<Q> = if r == 0 {
        vec![ends.0, ends.1]
    } else {
        let x = (ends.1 - lin[r + 1].1) / lin[r + 1].0;
        (0..=r + 1).map(|i| if i == 0 { ends.0 } else { lin[i].0 * x + lin[i].1 }).collect()
    };
    for &node in &word.0 {
        let v = vals[node] + vals[node + 1];
        vals.insert(node + 1, v);
    }
    vals
}

fn compatible_function_matches_eval(cases: u32) -> Result<usize, String> {
    let s = (seed_and_word(5, 10), (1i64..=9, 1i64..=9), (1i64..=9, 1i64..=9));
    run(cases, s, |((rep, word), (an, ad), (bn, bd))| {
        let ext = extend_blowup(&rep, &word).unwrap();
        let im = rep.images();
        let c = Cone::new(im[0], *im.last().unwrap()).unwrap();
        let f = RationalFunctional::new(c, Rat64::ratio(an, ad), Rat64::ratio(bn, bd));
        let got = ext.evaluate(&f);
        let want = propagate_compatible(rep.string().weights(), (Q::new(an, ad), Q::new(bn, bd)), &word);
        prop_assert_eq!(got, want);
        Ok(())
    })
}

fn left_right_blowups_commute(cases: u32) -> Result<usize, String> {
    let s = seed_and_word(5, 6).prop_flat_map(|(rep, word)| {
        let r = rep.string().len() + word.0.len();
        (Just(rep), Just(word), 1..=r.max(1))
    });
    run(cases, s, |(rep, word, j)| {
        let base = extend_blowup(&rep, &word).unwrap();
        prop_assume!(j <= base.string().len());
        // E_j sits between nodes j-1 and j.
        let left_first = extend_blowup(&base, &BlowupWord(vec![j - 1, j + 1])).unwrap();
        let right_first = extend_blowup(&base, &BlowupWord(vec![j, j - 1])).unwrap();
        prop_assert_eq!(left_first, right_first);
        Ok(())
    })
}

// ---------------------------------------------------------------- brauer

/// A grid configuration refined by a random word, with its images.
fn refined(pt: &GridPoint, raw: &[u16]) -> FanRep {
    let c = pt.cfg.cone();
    let s = cone_weights(&c);
    let rep = seed_rep(&s, FractionPair::new(c.w.a, -c.w.b).unwrap_or(FractionPair::REGULAR)).unwrap();
    let mut len = s.len();
    let word = raw
        .iter()
        .map(|&x| {
            let node = x as usize % (len + 1);
            len += 1;
            node
        })
        .collect();
    extend_blowup(&rep, &BlowupWord(word)).unwrap()
}

fn delta_satisfies_adjunction(cases: u32) -> Result<usize, String> {
    run(cases, (grid_index(), prop::collection::vec(any::<u16>(), 0..8)), |(i, raw)| {
        let pt = &grid_points()[i];
        let ext = refined(pt, &raw);
        let delta = delta_functional::<Rat>(&pt.cfg).unwrap();
        let vals = ext.evaluate(&delta);
        prop_assert_eq!(&vals[0], &Rat::recip_int(pt.cfg.n_on(pt.cfg.cone().u)));
        for (j, &m) in ext.string().weights().iter().enumerate() {
            prop_assert!((vals[j].clone() - Rat::int(m) * vals[j + 1].clone() + vals[j + 2].clone()).is_zero());
        }
        Ok(())
    })
}

fn ramification_satisfies_obstruction(cases: u32) -> Result<usize, String> {
    run(cases, (grid_index(), prop::collection::vec(any::<u16>(), 0..8)), |(i, raw)| {
        let pt = &grid_points()[i];
        let ext = refined(pt, &raw);
        let z = ram_hom(&pt.cfg).unwrap();
        let im = ext.images();
        for (j, &m) in ext.string().weights().iter().enumerate() {
            prop_assert!((z.eval(im[j]) - m * z.eval(im[j + 1]) + z.eval(im[j + 2])).is_zero());
        }
        Ok(())
    })
}

fn blowup_ram_matches_mediant(cases: u32) -> Result<usize, String> {
    let s = (grid_index(), prop::collection::vec(any::<u16>(), 0..8), any::<u16>());
    run(cases, s, |(i, raw, pick)| {
        let pt = &grid_points()[i];
        let ext = refined(pt, &raw);
        let z = ram_hom(&pt.cfg).unwrap();
        let im = ext.images();
        let j = pick as usize % (im.len() - 1);
        let through = [(Cover::Unramified(z.eval(im[j])), 1), (Cover::Unramified(z.eval(im[j + 1])), 1)];
        prop_assert_eq!(blowup_ram(&through).unwrap(), z.eval(im[j].mediant(&im[j + 1])));
        Ok(())
    })
}

fn zbar_orders_divide_p(cases: u32) -> Result<usize, String> {
    run(cases, (grid_index(), vec_in(60)), |(i, v)| {
        let pt = &grid_points()[i];
        prop_assert_eq!(pt.cfg.p % pt.cfg.zbar.eval(v).order(), 0);
        Ok(())
    })
}

// ---------------------------------------------------------------- mmp

fn classify_matches_blowup_tree(cases: u32) -> Result<usize, String> {
    run(cases, grid_index(), |i| {
        let pt = &grid_points()[i];
        let tree: &BlowupTree = pt.tree.as_ref().expect("type-A point");
        let verdict = classify::<Rat64>(&pt.cfg).unwrap();
        let oracle = tree.violators(usize::MAX);
        match verdict {
            Verdict::NotTerminal { witness, b_value } => {
                let first = oracle.first().ok_or_else(|| TestCaseError::fail(format!("{}: oracle terminal", pt.label)))?;
                prop_assert_eq!((witness.a, witness.b), first.image);
                prop_assert_eq!(Q::new(*b_value.numer(), *b_value.denom()), first.b);
            }
            Verdict::Terminal { .. } => prop_assert!(oracle.is_empty(), "{}: oracle found {:?}", pt.label, oracle[0]),
            Verdict::Unsupported { reason } => return Err(TestCaseError::fail(format!("{}: {reason}", pt.label))),
        }
        Ok(())
    })
}

fn terminal_round_trip(cases: u32) -> Result<usize, String> {
    run(cases, terminal_config(), |pt| {
        let up = beta_blowup::<Rat>(&pt.cfg).map_err(|e| TestCaseError::fail(format!("{}: {e}", pt.label)))?;
        let steps = zariski_factorize::<Rat>(&up.chain).map_err(|e| TestCaseError::fail(format!("{}: {e}", pt.label)))?;
        prop_assert_eq!(steps.len(), 1);
        let original = cone_weights(&pt.cfg.cone());
        let expected = (!original.is_empty()).then_some(original);
        prop_assert_eq!(steps[0].singularity.as_ref().map(|s| s.weights().to_vec()), expected.map(|s| s.weights().to_vec()));
        Ok(())
    })
}

fn witness_recomputes(cases: u32) -> Result<usize, String> {
    run(cases, grid_index(), |i| {
        let pt = &grid_points()[i];
        let Verdict::NotTerminal { witness, b_value } = classify::<Rat>(&pt.cfg).unwrap() else { return Ok(()) };
        let c = pt.cfg.cone();
        prop_assert!(witness.is_primitive() && c.contains_open(witness));
        let delta = delta_functional::<Rat>(&pt.cfg).unwrap().eval(witness).unwrap();
        let z = pt.cfg.zbar.eval(witness);
        let b = delta.clone() - Rat::recip_int(z.order());
        prop_assert_eq!(&b, &b_value);
        prop_assert!(b <= Rat::zero());
        if z.is_zero() {
            prop_assert!(delta <= Rat::one());
        } else {
            prop_assert!(delta <= Rat::recip_int(pt.cfg.p));
        }
        Ok(())
    })
}

fn case_four_split_determinants(_cases: u32) -> Result<usize, String> {
    let all = [7i64, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43].into_iter().flat_map(|p| (2..p).map(move |k| (p, k)));
    exhaustive(all, |(p, k)| {
        let cfg = LocalConfig::hj(p, p, k).unwrap().with_zbar(tv(1, p), TorsionValue::ZERO);
        let up = beta_blowup::<Rat>(&cfg).map_err(|e| format!("HJ({p},{k}): {e}"))?;
        let dets: Vec<i64> = up.singularities.iter().map(|s| s.weights.determinant()).collect();
        if dets != [p, p] || up.target != LatticeVector::new(p, 1 - k) {
            return Err(format!("HJ({p},{k}): target {} dets {dets:?}", up.target));
        }
        Ok(())
    })
}

fn factorization_keeps_b_positive(cases: u32) -> Result<usize, String> {
    let s = (terminal_config(), prop::collection::vec((1i64..=4, 1i64..=4), 0..3));
    run(cases, s, |(pt, coeffs)| {
        let c = pt.cfg.cone();
        let target = beta_blowup::<Rat>(&pt.cfg).unwrap().target;
        let mut rays = vec![target];
        rays.extend(coeffs.into_iter().map(|(x, y)| {
            let v = x * c.u + y * c.w;
            let g = v.a.gcd(&v.b);
            LatticeVector::new(v.a / g, v.b / g)
        }));
        let (chain, _) = resolution_chain(&pt.cfg, &rays).unwrap();
        let Ok(steps) = zariski_factorize::<Rat>(&chain) else { return Ok(()) };
        let mut state = chain.clone();
        for step in &steps {
            let idx = state.index_of(&step.curve).unwrap();
            state = state.contract_unchecked(idx);
            for run in state.components() {
                let bs = state.component_b_values::<Rat>(&run).unwrap();
                prop_assert!(bs.iter().all(|b| *b > Rat::zero()), "{}: after {} b = {:?}", pt.label, step.curve, bs);
            }
        }
        prop_assert!(state.remaining().is_empty());
        Ok(())
    })
}

/// Swapping the two coordinates maps a regular configuration to itself.
fn swap_symmetric(cfg: &LocalConfig) -> bool {
    let swap = |v: LatticeVector| LatticeVector::new(v.b, v.a);
    let mirrored: Vec<_> = cfg.branches.iter().map(|b| (swap(b.ray), b.e, b.g, b.cover.clone())).collect();
    let same_branches = mirrored.iter().all(|(ray, e, g, cover)| {
        cfg.branch_on(*ray).is_some_and(|b| b.e == *e && b.g == *g && &b.cover == cover)
    });
    cfg.cone() == Cone::standard() && same_branches && cfg.zbar.value_e1 == cfg.zbar.value_e2
}

fn castelnuovo_contraction_is_unique(cases: u32) -> Result<usize, String> {
    run(cases, terminal_config(), |pt| {
        let target = beta_blowup::<Rat>(&pt.cfg).unwrap().target;
        let delta = delta_functional::<Rat>(&pt.cfg).unwrap();
        let candidates = enumerate_primitive(&delta.cone, &delta, &Rat::int(3)).unwrap();
        prop_assert!(candidates.contains(&target));
        for v in candidates {
            if v == target || extract_ray::<Rat>(&pt.cfg, v).is_err() {
                continue;
            }
            let mirror = LatticeVector::new(target.b, target.a);
            prop_assert!(v == mirror && swap_symmetric(&pt.cfg), "{}: {v} also extracts", pt.label);
        }
        Ok(())
    })
}

fn terminal_model_is_consistent(cases: u32) -> Result<usize, String> {
    run(cases, grid_index(), |i| {
        let pt = &grid_points()[i];
        let model = terminal_model::<Rat64>(&pt.cfg).map_err(|e| TestCaseError::fail(format!("{}: {e}", pt.label)))?;
        let terminal = classify::<Rat64>(&pt.cfg).unwrap().is_terminal();
        prop_assert_eq!(model.extracted.is_empty(), terminal);
        prop_assert_eq!(model.singularities.len(), model.extracted.len() + 1);
        for piece in &model.pieces {
            prop_assert!(classify::<Rat64>(piece).unwrap().is_terminal() || cone_weights(&piece.cone()).is_empty());
        }
        Ok(())
    })
}
