use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cohomology::{coboundary, cohomology_group, extension_class, same_class, Cochain, Nerve};
use crate::error::{Error, Result};
use crate::fock::{
    bogoliubov_implement, conjugation_defect, gerbe_triple_check, schwinger_term, vacuum_at_level, vacuum_line,
    FockSpace, SpectralBackground,
};
use crate::grassmann::{alpha_ratio, detline_act, frame_act, DetLineElement, Frame};
use crate::groupoid::{
    action_groupoid, axioms_check, central_extend, centrality_check, coboundary_twist, cocycle_check,
    extension_diagnostics, glue_local_data, CyclicCocycle, FiniteGroup, FiniteGroupoid, PhaseCocycle, RightAction,
};
use crate::operator::{determinant, matrix_exponential, CMatrix, Polarization, C64};
use crate::random;
use crate::regdet::{det_p, log_det_p_series, omega_p, UnitalPerturbation};

use super::report::{CaseRecord, InputDigest};
use super::{RunConfig, Suite};

/// Terms of the trace series compared against `Log det_p`.
const SERIES_TERMS: usize = 40;
/// Pre-computed brute-force value of the Schwinger term for `m = 2`, `k = 1`,
/// `X = E₁₂`, `Y = E₂₁`.
pub const RAISING_LOWERING_SCHWINGER: f64 = -1.0;
/// Twist enumerations up to this many arrow functions are exhaustive.
pub const EXHAUSTIVE_TWISTS: u64 = 4096;
const SAMPLED_TWISTS: usize = 256;

pub fn run(suite: Suite, config: &RunConfig, seed: u64) -> Vec<CaseRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match suite {
        Suite::Detp => detp(config, &mut rng),
        Suite::Grassmann => grassmann(config, &mut rng),
        Suite::Fock => fock(config, &mut rng),
        Suite::Groupoid => groupoid(config, &mut rng),
        Suite::Cohomology => cohomology(config, &mut rng),
    }
}

fn relative(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

fn small_norm<R: Rng>(rng: &mut R, max: f64) -> f64 {
    rng.gen_range(0.0..max).max(1e-3 * max)
}

fn detp(config: &RunConfig, rng: &mut ChaCha8Rng) -> Vec<CaseRecord> {
    const S: &str = "detp";
    let n_max = config.bounds.dim;
    let p_max = config.bounds.p.min(4);
    let mut out = Vec::new();
    for i in 0..200 {
        let n = rng.gen_range(1..=n_max);
        let p = rng.gen_range(1..=p_max);
        let norm = small_norm(rng, 0.1);
        let a = random::matrix_with_norm(rng, n, norm);
        let digest = InputDigest::new().matrix(&a).text(&p.to_string()).finish();
        let series = det_p(&a, p).and_then(|d| Ok((d.log_value - log_det_p_series(&a, p, SERIES_TERMS)?).norm()));
        out.push(CaseRecord::from_result(S, format!("series#{i}"), digest, config.tolerance("detp.series"), series));
    }
    for i in 0..200 {
        let n = rng.gen_range(1..=n_max);
        let p = rng.gen_range(1..=p_max);
        let [a, b, c] = [0; 3].map(|_| {
            let norm = small_norm(rng, 0.5);
            random::matrix_with_norm(rng, n, norm)
        });
        let digest = InputDigest::new().matrix(&a).matrix(&b).matrix(&c).text(&p.to_string()).finish();
        let check = (|| {
            let [a, b, c] = [a, b, c].map(UnitalPerturbation::new);
            let (a, b, c) = (a?, b?, c?);
            let lhs = omega_p(&a, &b.compose(&c)?, p)?;
            let rhs = omega_p(&a.compose(&b)?, &c, p)? * omega_p(&a, &b, p)?;
            Ok(relative(rhs, lhs))
        })();
        out.push(CaseRecord::from_result(S, format!("omega-cocycle#{i}"), digest, config.tolerance("detp.omega"), check));
    }
    for i in 0..200 {
        let n = rng.gen_range(1..=n_max);
        let p = rng.gen_range(1..=p_max);
        let norm = small_norm(rng, 2.0);
        let a = random::matrix_with_norm(rng, n, norm);
        let digest = InputDigest::new().matrix(&a).text(&p.to_string()).finish();
        let classical = (|| {
            let d1 = det_p(&a, 1)?.value;
            Ok(relative(d1, determinant(&a.shift_identity(C64::new(1.0, 0.0)))?))
        })();
        out.push(CaseRecord::from_result(
            S,
            format!("classical#{i}"),
            digest.clone(),
            config.tolerance("detp.classical"),
            classical,
        ));
        let dual = det_p(&a, p).map(|d| d.dual_discrepancy);
        out.push(CaseRecord::from_result(S, format!("dual#{i}"), digest, config.tolerance("detp.dual"), dual));
    }
    out
}

/// A frame in the big cell: `w₊ = 1 + (small)`, arbitrary lower block.
pub(crate) fn random_frame<R: Rng>(rng: &mut R, n: usize, k: usize) -> Result<Frame> {
    let top = random::matrix_with_norm(rng, k, 0.3).shift_identity(C64::new(1.0, 0.0));
    let bottom = random::complex_matrix(rng, n - k, k).scale_real(0.5);
    let m = CMatrix::from_fn(n, k, |i, j| if i < k { top.get(i, j) } else { bottom.get(i - k, j) });
    Frame::new(Polarization::new(n, k)?, m)
}

fn grassmann(config: &RunConfig, rng: &mut ChaCha8Rng) -> Vec<CaseRecord> {
    const S: &str = "grassmann";
    let n_max = config.bounds.dim.min(6);
    let p_max = config.bounds.p.min(3);
    let mut out = Vec::new();
    for i in 0..200 {
        let n = rng.gen_range(2..=n_max);
        let k = rng.gen_range(1..n);
        let p = rng.gen_range(1..=p_max);
        let frame = random_frame(rng, n, k);
        let t1 = random::unital(rng, k, 0.5);
        let t2 = random::unital(rng, k, 0.5);
        let lambda = random::complex(rng);
        let mut digest = InputDigest::new();
        if let Ok(w) = &frame {
            digest = digest.matrix(w.matrix());
        }
        let digest = digest.matrix(&t1).matrix(&t2).vector(&[lambda]).text(&p.to_string()).finish();
        let check = frame.and_then(|w| {
            let e = DetLineElement { frame: w, lambda };
            let stepwise = detline_act(&detline_act(&e, &t1, p)?, &t2, p)?;
            let direct = detline_act(&e, &(&t1 * &t2), p)?;
            Ok(relative(stepwise.lambda, direct.lambda)
                .max(stepwise.frame.matrix().max_abs_diff(direct.frame.matrix())))
        });
        out.push(CaseRecord::from_result(S, format!("detline-assoc#{i}"), digest, config.tolerance("grassmann.detline"), check));
    }
    for i in 0..100 {
        let n = rng.gen_range(2..=n_max);
        let k = rng.gen_range(1..n);
        let p = rng.gen_range(1..=p_max);
        let frame = random_frame(rng, n, k);
        let g = random::unital(rng, n, 0.3);
        let q = random::unital(rng, k, 0.5);
        let t1 = random::unital(rng, k, 0.5);
        let t2 = random::unital(rng, k, 0.5);
        let mut digest = InputDigest::new();
        if let Ok(w) = &frame {
            digest = digest.matrix(w.matrix());
        }
        let digest = digest.matrix(&g).matrix(&q).matrix(&t1).matrix(&t2).text(&p.to_string()).finish();
        let check = frame.and_then(|w| {
            let whole = alpha_ratio(&g, &q, &w, &(&t1 * &t2), p)?;
            let split = alpha_ratio(&g, &q, &w, &t1, p)? * alpha_ratio(&g, &q, &frame_act(&w, &t1)?, &t2, p)?;
            Ok(relative(split, whole))
        });
        out.push(CaseRecord::from_result(S, format!("alpha-mult#{i}"), digest, config.tolerance("grassmann.alpha"), check));
    }
    out
}

fn space<R: Rng>(rng: &mut R, m_max: usize) -> Result<FockSpace> {
    let m = rng.gen_range(1..=m_max);
    let k = rng.gen_range(0..=m);
    FockSpace::new(m, Polarization::new(m, k)?)
}

fn space_digest(s: &Result<FockSpace>) -> InputDigest {
    match s {
        Ok(s) => InputDigest::new().text(&format!("m={} k={}", s.modes(), s.polarization().plus_dim())),
        Err(_) => InputDigest::new().text("invalid space"),
    }
}

/// Three increasing levels in `[-3, 3]`, each at least `gap` from the
/// spectrum and from each other.
fn levels<R: Rng>(rng: &mut R, bg: &SpectralBackground, gap: f64) -> [f64; 3] {
    loop {
        let mut l = [0.0; 3].map(|_| rng.gen_range(-3.0..3.0));
        l.sort_by(f64::total_cmp);
        let clear = l.iter().all(|x| bg.eigenvalues().iter().all(|e| (x - e).abs() > gap))
            && l.windows(2).all(|w| w[1] - w[0] > gap);
        if clear {
            return l;
        }
    }
}

fn fock(config: &RunConfig, rng: &mut ChaCha8Rng) -> Vec<CaseRecord> {
    const S: &str = "fock";
    let m_max = config.bounds.modes;
    let mut out = Vec::new();
    for i in 0..100 {
        let sp = space(rng, m_max);
        let m = sp.as_ref().map_or(1, |s| s.modes());
        let x = random::anti_hermitian(rng, m);
        let y = random::anti_hermitian(rng, m);
        let digest = space_digest(&sp).matrix(&x).matrix(&y).finish();
        let pair = sp.and_then(|s| Ok((schwinger_term(&s, &x, &y)?, schwinger_term(&s, &y, &x)?)));
        let scalar = pair.as_ref().map(|(a, b)| a.residue.max(b.residue)).map_err(clone_err);
        let antisym = pair.map(|(a, b)| (a.value + b.value).norm());
        out.push(CaseRecord::from_result(S, format!("scalar#{i}"), digest.clone(), config.tolerance("fock.scalar"), scalar));
        out.push(CaseRecord::from_result(S, format!("antisymmetry#{i}"), digest, config.tolerance("fock.antisymmetry"), antisym));
    }
    for i in 0..100 {
        let sp = space(rng, m_max);
        let m = sp.as_ref().map_or(1, |s| s.modes());
        let [x, y, z] = [0; 3].map(|_| random::anti_hermitian(rng, m));
        let digest = space_digest(&sp).matrix(&x).matrix(&y).matrix(&z).finish();
        let check = sp.and_then(|s| {
            let c = |a: &CMatrix, b: &CMatrix, d: &CMatrix| schwinger_term(&s, &a.commutator(b), d).map(|t| t.value);
            Ok((c(&x, &y, &z)? + c(&y, &z, &x)? + c(&z, &x, &y)?).norm())
        });
        out.push(CaseRecord::from_result(S, format!("lie-cocycle#{i}"), digest, config.tolerance("fock.cocycle"), check));
    }
    for i in 0..100 {
        let sp = space(rng, m_max);
        let (m, k) = sp.as_ref().map_or((1, 0), |s| (s.modes(), s.polarization().plus_dim()));
        let x = random::block_diagonal_anti_hermitian(rng, m, k);
        let y = random::block_diagonal_anti_hermitian(rng, m, k);
        let digest = space_digest(&sp).matrix(&x).matrix(&y).finish();
        let check = sp.and_then(|s| Ok(schwinger_term(&s, &x, &y)?.value.norm()));
        out.push(CaseRecord::from_result(S, format!("block-diagonal#{i}"), digest, config.tolerance("fock.block"), check));
    }
    {
        let x = CMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let y = CMatrix::from_real_rows(&[&[0.0, 0.0], &[1.0, 0.0]]);
        let digest = InputDigest::new().text("m=2 k=1").matrix(&x).matrix(&y).finish();
        let check = Polarization::new(2, 1)
            .and_then(|p| FockSpace::new(2, p))
            .and_then(|s| schwinger_term(&s, &x, &y))
            .map(|t| (t.value - C64::new(RAISING_LOWERING_SCHWINGER, 0.0)).norm());
        out.push(CaseRecord::from_result(S, "raising-lowering-fixture".into(), digest, config.tolerance("fock.fixture"), check));
    }
    for i in 0..50 {
        let sp = space(rng, m_max);
        let m = sp.as_ref().map_or(1, |s| s.modes());
        let x = random::anti_hermitian(rng, m);
        let vs: Vec<Vec<C64>> = (0..50).map(|_| random::complex_vector(rng, m)).collect();
        let mut digest = space_digest(&sp).matrix(&x);
        for v in &vs {
            digest = digest.vector(v);
        }
        let check = sp.and_then(|s| {
            let gamma = bogoliubov_implement(&s, &x)?;
            let g = matrix_exponential(&x)?;
            vs.iter().try_fold(0.0f64, |acc, v| Ok(acc.max(conjugation_defect(&gamma, &g, v)?)))
        });
        out.push(CaseRecord::from_result(S, format!("bogoliubov#{i}"), digest.finish(), config.tolerance("fock.bogoliubov"), check));
    }
    let gerbe_max = config.bounds.dim.min(6);
    for i in 0..100 {
        let m = rng.gen_range(1..=gerbe_max);
        let d = random::hermitian(rng, m).scale_real(2.0);
        let bg = SpectralBackground::new(d.clone());
        let l = match &bg {
            Ok(bg) => levels(rng, bg, 1e-6),
            Err(_) => [-1.0, 0.0, 1.0],
        };
        let digest = InputDigest::new().matrix(&d).vector(&l.map(|x| C64::new(x, 0.0))).finish();
        let witness = bg.as_ref().map_err(clone_err).and_then(|bg| {
            let w = gerbe_triple_check(bg, l[0], l[1], l[2])?;
            Ok((w.norm() - 1.0).abs())
        });
        out.push(CaseRecord::from_result(S, format!("gerbe-witness#{i}"), digest.clone(), config.tolerance("fock.witness"), witness));
        let additivity = bg.and_then(|bg| {
            let dims = [(l[0], l[1]), (l[1], l[2]), (l[0], l[2])]
                .map(|(lo, hi)| vacuum_line(&bg, lo, hi).map(|v| v.window_dim() as f64));
            Ok((dims[0].as_ref().map_err(clone_err)? + dims[1].as_ref().map_err(clone_err)?
                - dims[2].as_ref().map_err(clone_err)?)
            .abs())
        });
        out.push(CaseRecord::from_result(S, format!("window-additivity#{i}"), digest, 0.0, additivity));
    }
    for i in 0..50 {
        let m = rng.gen_range(1..=m_max);
        let d = random::hermitian(rng, m).scale_real(2.0);
        let bg = SpectralBackground::new(d.clone());
        let l = match &bg {
            Ok(bg) => levels(rng, bg, 1e-6),
            Err(_) => [-1.0, 0.0, 1.0],
        };
        let digest = InputDigest::new().matrix(&d).vector(&[C64::new(l[0], 0.0), C64::new(l[2], 0.0)]).finish();
        let check = bg.and_then(|bg| filling_violation(&bg, l[0], l[2]));
        out.push(CaseRecord::from_result(S, format!("dirac-filling#{i}"), digest, config.tolerance("fock.filling"), check));
    }
    out
}

/// `| |⟨vac_μ, ψ*(v₁)⋯ψ*(v_r) vac_λ⟩| − 1 |` over the eigenvectors `v_i`
/// with eigenvalues in `(λ, μ)`, ascending.
pub(crate) fn filling_violation(bg: &SpectralBackground, lambda: f64, mu: f64) -> Result<f64> {
    let m = bg.dim();
    let space = FockSpace::new(m, Polarization::new(m, m)?)?;
    let lower = vacuum_at_level(&space, bg, lambda)?;
    let upper = vacuum_at_level(&space, bg, mu)?;
    let window: Vec<usize> = (0..m)
        .filter(|&i| bg.eigenvalues()[i] > lambda && bg.eigenvalues()[i] < mu)
        .collect();
    let mut state = lower;
    for &i in window.iter().rev() {
        state = space.apply_psi_star(&bg.eigenvectors().column(i), &state)?;
    }
    Ok((upper.inner(&state).norm() - 1.0).abs())
}

fn clone_err(e: &Error) -> Error {
    Error::Consistency(e.to_string())
}

fn bool_violation(ok: bool) -> f64 {
    if ok {
        0.0
    } else {
        1.0
    }
}

fn groupoid(config: &RunConfig, rng: &mut ChaCha8Rng) -> Vec<CaseRecord> {
    const S: &str = "groupoid";
    let n_max = config.bounds.modulus.min(8);
    let mut out = Vec::new();
    for i in 0..50 {
        let modulus = rng.gen_range(2..=n_max);
        let inst = random::refined_cover(rng, 8, 6, modulus);
        let digest = match &inst {
            Ok(inst) => InputDigest::new()
                .text(&serde_json::to_string(&crate::groupoid::CoverJson::from_data(&inst.data, Some(modulus))).expect("serializable"))
                .finish(),
            Err(_) => InputDigest::new().text("generation failed").finish(),
        };
        let checks = inst.and_then(|inst| {
            let group = inst.kind.build()?;
            let base = action_groupoid(&inst.data.action, &group)?;
            let axioms = axioms_check(&base).len() as f64;
            let cocycle = cocycle_check(&base, &PhaseCocycle::Cyclic(inst.global.clone()))?;
            let ext = glue_local_data(&inst.data, modulus)?;
            let central = centrality_check(&ext) + extension_diagnostics(&ext) as f64;
            let round_trip = bool_violation(same_class(&base, &ext.multiplication_cocycle()?, &inst.global)?);
            Ok([axioms, cocycle, central, round_trip])
        });
        let names = ["axioms", "cocycle", "centrality", "round-trip"];
        match checks {
            Ok(values) => {
                for (name, v) in names.iter().zip(values) {
                    out.push(CaseRecord::measured(S, format!("{name}#{i}"), digest.clone(), v, 0.0));
                }
            }
            Err(e) => {
                for name in names {
                    out.push(CaseRecord::failed(S, format!("{name}#{i}"), digest.clone(), 0.0, &e));
                }
            }
        }
    }
    out
}

fn point_group(n: usize) -> Result<FiniteGroupoid> {
    let g = FiniteGroup::cyclic(n)?;
    action_groupoid(&RightAction::trivial(&g, 1), &g)
}

/// Small groupoids used by the cohomology battery, with their group orders
/// when they are action groupoids.
fn test_family<R: Rng>(rng: &mut R) -> Result<Vec<(String, FiniteGroupoid, usize, usize)>> {
    let mut family = Vec::new();
    for kind in random::group_kinds(6) {
        let g = kind.build()?;
        for (label, act) in [("point", RightAction::trivial(&g, 1)), ("random", random::action(rng, &g, 3)?)] {
            let gr = action_groupoid(&act, &g)?;
            family.push((format!("{kind:?}/{label}"), gr, act.points(), g.order()));
        }
    }
    Ok(family)
}

fn cohomology(config: &RunConfig, rng: &mut ChaCha8Rng) -> Vec<CaseRecord> {
    const S: &str = "cohomology";
    let mut out = Vec::new();
    let family = match test_family(rng) {
        Ok(f) => f,
        Err(e) => {
            out.push(CaseRecord::failed(S, "family".into(), String::new(), 0.0, &e));
            return out;
        }
    };
    for (label, g, points, order) in &family {
        let digest = InputDigest::new().text(label).finish();
        let nerve = Nerve::new(g, 3);
        let sizes = nerve.as_ref().map_err(clone_err).map(|nv| {
            (0..=3).filter(|&p| nv.count(p) != points * order.pow(p as u32)).count() as f64
        });
        out.push(CaseRecord::from_result(S, format!("nerve-sizes[{label}]"), digest.clone(), 0.0, sizes));
        let identities = nerve.as_ref().map_err(clone_err).map(|nv| nv.simplicial_identity_check().len() as f64);
        out.push(CaseRecord::from_result(S, format!("simplicial[{label}]"), digest.clone(), 0.0, identities));
        for degree in 0..2 {
            let modulus = rng.gen_range(2..=config.bounds.modulus);
            let check = nerve.as_ref().map_err(clone_err).and_then(|nv| {
                let mut f = Cochain::zero(nv, degree, modulus);
                for v in &mut f.values {
                    *v = rng.gen_range(0..modulus);
                }
                let dd = coboundary(&coboundary(&f, nv)?, nv)?;
                Ok(dd.values.iter().filter(|&&v| v != 0).count() as f64)
            });
            out.push(CaseRecord::from_result(S, format!("delta-squared[{label},p={degree}]"), digest.clone(), 0.0, check));
        }
    }
    let known: [(&str, Result<FiniteGroupoid>, u32, Vec<u64>); 3] = [
        ("h2-bz2", point_group(2), 2, vec![2]),
        ("h2-bz3", point_group(3), 3, vec![3]),
        ("h2-free-z2", FiniteGroup::cyclic(2).and_then(|g| action_groupoid(&RightAction::regular(&g), &g)), 2, vec![]),
    ];
    for (name, g, modulus, expected) in known {
        let check = g.and_then(|g| cohomology_group(&g, 2, modulus)).map(|h| bool_violation(h.invariant_factors == expected));
        out.push(CaseRecord::from_result(S, name.into(), InputDigest::new().text(name).finish(), 0.0, check));
    }
    {
        let check = point_group(2).and_then(|g| {
            let c = CyclicCocycle::from_fn(&g, 2, |x, y| (x == 1 && y == 1) as i64)?;
            let class = extension_class(&central_extend(&g, &c)?)?;
            Ok(bool_violation(class.invariant_factors == [2] && class.class == [1]))
        });
        out.push(CaseRecord::from_result(S, "z4-extension-class".into(), InputDigest::new().text("z4").finish(), 0.0, check));
    }
    for kind in random::group_kinds(4) {
        for modulus in 2..=4u32 {
            for max_points in [1usize, 3] {
                let check = twist_invariance(rng, kind, modulus, max_points);
                let label = format!("twist-invariance[{kind:?},N={modulus},|A|<={max_points}]");
                let digest = InputDigest::new().text(&label).finish();
                out.push(CaseRecord::from_result(S, label, digest, 0.0, check));
            }
        }
    }
    out
}

/// Number of coboundary twists that change the class of a random cocycle;
/// every twist is tried when there are at most [`EXHAUSTIVE_TWISTS`].
fn twist_invariance<R: Rng>(rng: &mut R, kind: random::GroupKind, modulus: u32, max_points: usize) -> Result<f64> {
    let g = kind.build()?;
    let act = random::action(rng, &g, max_points)?;
    let base = action_groupoid(&act, &g)?;
    let c = random::global_cocycle(rng, kind, &act, modulus)?;
    let nerve = Nerve::new(&base, 3)?;
    let h2 = crate::cohomology::cohomology_of_nerve(&nerve, 2, modulus)?;
    let class = h2.class_of(&Cochain::from_cocycle(&nerve, &c)?)?;
    let arrows = base.n_arrows();
    let total = (modulus as u64).checked_pow(arrows as u32).filter(|&t| t <= EXHAUSTIVE_TWISTS);
    let twists: Vec<Vec<u32>> = match total {
        Some(t) => (0..t)
            .map(|mut code| {
                (0..arrows)
                    .map(|_| {
                        let d = (code % modulus as u64) as u32;
                        code /= modulus as u64;
                        d
                    })
                    .collect()
            })
            .collect(),
        None => (0..SAMPLED_TWISTS)
            .map(|_| (0..arrows).map(|_| rng.gen_range(0..modulus)).collect())
            .collect(),
    };
    let mut changed = 0usize;
    for b in &twists {
        let twisted = coboundary_twist(&base, &c, b)?;
        if h2.class_of(&Cochain::from_cocycle(&nerve, &twisted)?)? != class {
            changed += 1;
        }
    }
    Ok(changed as f64)
}
