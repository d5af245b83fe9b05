//! Check bodies. Each runs one trial: draw, evaluate, record into the
//! trial's tally. Radius profiles are built once per matrix and shared
//! across the norm grid.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use super::tally::{Decision, Tally, Witness};
use super::Trial;
use crate::complexmat::{
    basis, ginibre, hermitian, inner, nilpotent, rank_one, unitary, vec_norm, ComplexMatrix, EnsembleKind, C64,
};
use crate::error::Result;
use crate::geometry::{
    bj_orthogonal, dependence_ratio, parallel_witness_with, trace_condition_sides, w1_parallel_conditions_with,
    wn_orthogonal_with, DECISION_TOL, DEPENDENCE_TOL, TRACE_TOL,
};
use crate::norms::NormSpec;
use crate::radius::{numerical_radius, scalar_distance, w2_closed, wn_max, MaxSearch, RadiusProfile};
use crate::spectral;

const MAX_REDRAWS: usize = 20;

fn profile(a: &ComplexMatrix) -> RadiusProfile {
    RadiusProfile::new(a, MaxSearch::default())
}

fn w(p: &RadiusProfile, n: &NormSpec) -> f64 {
    p.sup(n).value
}

/// Circle grid for parallelism decisions inside the suite.
fn circle() -> MaxSearch {
    MaxSearch::with_grid(512)
}

/// Inner radius search for `w_N`-orthogonality decisions.
fn coarse() -> MaxSearch {
    MaxSearch {
        grid: 256,
        refine_top: 3,
        tol: 1e-10,
    }
}

type Key = (usize, u64);

fn key(t: &Trial) -> Key {
    (t.dim, t.index)
}

fn tag(k: Key, n: &NormSpec) -> String {
    format!("{} n={} trial={}", n.label(), k.0, k.1)
}

fn wit(label: String, mats: &[&ComplexMatrix]) -> Witness {
    Witness::new(label, mats)
}

fn describe(label: &str, ds: &[Decision]) -> String {
    let parts: Vec<String> = ds.iter().map(|d| format!("{}={:e}", d.name, d.defect)).collect();
    format!("{label}: {}", parts.join(", "))
}

fn jordan() -> ComplexMatrix {
    ComplexMatrix::from_real(&[&[0.0, 1.0], &[0.0, 0.0]])
}

/// `e^{iψ}H`, the constructed positives for normaloid-type equalities.
fn rotated_hermitian(t: &mut Trial) -> ComplexMatrix {
    let h = hermitian(t.dim, &mut t.rng);
    h.scale(t.rng.unimodular())
}

/// Runs one margin-gated equivalence sample; even trials use the positive
/// construction. Samples with a decision between `τ` and `10τ` are redrawn.
fn gated(
    t: &mut Trial,
    label: String,
    mut sample: impl FnMut(&mut Trial, bool) -> Result<(Vec<Decision>, Vec<ComplexMatrix>)>,
) -> Result<()> {
    let positive = t.index % 2 == 0;
    for _ in 0..MAX_REDRAWS {
        let (ds, mats) = sample(t, positive)?;
        if ds.iter().any(Decision::in_dead_band) {
            t.acc.redraws += 1;
            continue;
        }
        t.acc.case();
        let refs: Vec<&ComplexMatrix> = mats.iter().collect();
        t.acc.agreement(&ds, || wit(describe(&label, &ds), &refs));
        return Ok(());
    }
    t.acc.dead_band += 1;
    Ok(())
}

pub(super) fn eq_1_1(t: &mut Trial) -> Result<()> {
    let a = t.single();
    let n = NormSpec::operator().eval(&a);
    let wa = numerical_radius(&a).value;
    let label = format!("op n={} trial={}", t.dim, t.index);
    t.acc.case();
    t.acc.ineq(0.5 * n, wa, || wit(format!("½‖A‖ ≤ w(A), {label}"), &[&a]));
    t.acc.ineq(wa, n, || wit(format!("w(A) ≤ ‖A‖, {label}"), &[&a]));
    Ok(())
}

pub(super) fn yamazaki(t: &mut Trial) -> Result<()> {
    let a = t.single();
    let n = NormSpec::operator().eval(&a);
    let wa = numerical_radius(&a).value;
    let mut qmax = 0.0f64;
    for _ in 0..200 {
        let x = t.rng.unit_vector(t.dim);
        qmax = qmax.max(a.quadratic_form(&x).norm());
    }
    let label = format!("n={} trial={}", t.dim, t.index);
    t.acc.case();
    t.acc.ineq(0.5 * n, wa, || wit(format!("½‖A‖ ≤ w(A), {label}"), &[&a]));
    t.acc.ineq(wa, n, || wit(format!("w(A) ≤ ‖A‖, {label}"), &[&a]));
    t.acc.ineq(qmax, wa, || wit(format!("|⟨Ax,x⟩| ≤ w(A), {label}"), &[&a]));
    Ok(())
}

pub(super) fn thm_4_1(t: &mut Trial) -> Result<()> {
    let a = t.single();
    let hs = NormSpec::hilbert_schmidt();
    let w2 = wn_max(&a, &hs).value;
    let fro = a.frobenius();
    let tr = a.matmul(&a).trace().norm();
    let lower = (fro * FRAC_1_SQRT_2).max(0.5 * (fro + tr.sqrt()));
    let label = format!("n={} trial={}", t.dim, t.index);
    t.acc.case();
    t.acc
        .ineq(lower, w2, || wit(format!("lower bound ≤ w₂(A), {label}"), &[&a]));
    t.acc.ineq(w2, fro, || wit(format!("w₂(A) ≤ ‖A‖₂, {label}"), &[&a]));
    t.acc.equal(w2, w2_closed(&a), fro, || {
        wit(format!("search vs closed form, {label}"), &[&a])
    });
    Ok(())
}

pub(super) fn prop_w2_upper(t: &mut Trial) -> Result<()> {
    let k = key(t);
    let hs = NormSpec::hilbert_schmidt();
    let label = tag(k, &hs);
    gated(t, label, |t, positive| {
        let a = if positive { rotated_hermitian(t) } else { t.single() };
        let na = a.frobenius();
        let d1 = ((na - w2_closed(&a)) / na).max(0.0);
        let par = parallel_witness_with(&a, &a.adjoint(), &hs, &circle())?;
        let d2 = par.gap / (2.0 * na);
        Ok((
            vec![
                Decision::new("w₂=‖A‖₂", d1, DECISION_TOL),
                Decision::new("A∥A*", d2, DECISION_TOL),
            ],
            vec![a],
        ))
    })
}

/// `U T U*` with `T` upper triangular and diagonal `μ`, `Σμ_k² = 0`, so
/// that `tr A² = 0`.
fn trace_square_zero(t: &mut Trial) -> ComplexMatrix {
    let n = t.dim;
    let mut mu: Vec<C64> = (0..n - 1).map(|_| t.rng.complex_gaussian()).collect();
    let s: C64 = mu.iter().map(|m| m * m).sum();
    mu.push((-s).sqrt());
    let scale = 1.0 / (n as f64).sqrt();
    let mut upper = Vec::with_capacity(n * n);
    for _ in 0..n * n {
        upper.push(t.rng.complex_gaussian() * scale);
    }
    let tri = ComplexMatrix::from_fn(n, |i, j| {
        if i == j {
            mu[i]
        } else if i < j {
            upper[i * n + j]
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let u = unitary(n, &mut t.rng);
    tri.conjugate_by(&u)
}

pub(super) fn prop_equiv_cota_inf(t: &mut Trial) -> Result<()> {
    let k = key(t);
    let norms = t.norms.to_vec();
    for norm in &norms {
        let label = tag(k, norm);
        gated(t, label, |t, positive| {
            let a = if positive { trace_square_zero(t) } else { t.single() };
            let fro = a.frobenius();
            let d1 = ((w2_closed(&a) - fro * FRAC_1_SQRT_2) / fro).max(0.0);
            let a2 = a.matmul(&a);
            let orth = bj_orthogonal(&ComplexMatrix::identity(t.dim), &a2, norm)?;
            let d2 = orth.drop() / orth.base;
            Ok((
                vec![
                    Decision::new("w₂=‖A‖₂/√2", d1, DECISION_TOL),
                    Decision::new("I⊥A²", d2, DECISION_TOL),
                ],
                vec![a],
            ))
        })?;
    }
    Ok(())
}

pub(super) fn rem_aluthge_trace(t: &mut Trial) -> Result<()> {
    let a = t.single();
    let al = spectral::aluthge(&a);
    let lhs = al.matmul(&al).trace().norm();
    let rhs = a.matmul(&a).trace().norm();
    let label = format!("n={} trial={}", t.dim, t.index);
    t.acc.case();
    t.acc.equal(lhs, rhs, a.frobenius_sq(), || {
        wit(format!("|tr(Ã²)| = |tr(A²)|, {label}"), &[&a])
    });
    Ok(())
}

fn pencil_identity(t: &mut Trial, swap: bool, what: &str) -> Result<()> {
    let k = key(t);
    let a = t.single();
    let (h, im) = a.cartesian_parts();
    let re = profile(&a);
    let other = if swap {
        RadiusProfile::pencil(im, h, MaxSearch::default())
    } else {
        RadiusProfile::pencil(h, im, MaxSearch::default())
    };
    for norm in t.norms {
        let x = w(&re, norm);
        let y = w(&other, norm);
        t.acc.case();
        t.acc.equal(x, y, x, || wit(format!("{what}, {}", tag(k, norm)), &[&a]));
    }
    Ok(())
}

pub(super) fn lemma_bp_1(t: &mut Trial) -> Result<()> {
    pencil_identity(t, true, "w_N(A) = sup N(Im(e^{iθ}A))")
}

pub(super) fn lemma_bp_2(t: &mut Trial) -> Result<()> {
    pencil_identity(t, false, "w_N(A) = sup N(α Re A + β Im A)")
}

pub(super) fn lemma_bp_3(t: &mut Trial) -> Result<()> {
    let k = key(t);
    let a = t.single();
    let adj = a.adjoint();
    let pa = profile(&a);
    for norm in t.norms {
        let rhs = 0.5 * (norm.eval(&a) + norm.eval(&adj));
        t.acc.case();
        t.acc.ineq(w(&pa, norm), rhs, || wit(tag(k, norm), &[&a]));
    }
    Ok(())
}

pub(super) fn lemma_bp_4(t: &mut Trial) -> Result<()> {
    let k = key(t);
    let (a, x) = t.pair();
    let adj = a.adjoint();
    let ax = a.matmul(&x);
    let xa = x.matmul(&adj);
    let plus = &ax + &xa;
    let minus = &ax - &xa;
    let (pp, pm, px) = (profile(&plus), profile(&minus), profile(&x));
    for norm in t.norms {
        let c = norm.eval(&a) + norm.eval(&adj);
        let wx = w(&px, norm);
        t.acc.case();
        t.acc.ineq(w(&pp, norm), c * wx, || {
            wit(format!("AX + XA*, {}", tag(k, norm)), &[&a, &x])
        });
        t.acc.ineq(w(&pm, norm), c * wx, || {
            wit(format!("AX − XA*, {}", tag(k, norm)), &[&a, &x])
        });
    }
    Ok(())
}

pub(super) fn lemma_bp_5(t: &mut Trial) -> Result<()> {
    let k = key(t);
    let a = t.single();
    let pa = profile(&a);
    for norm in t.norms {
        let n = norm.eval(&a);
        let premise = (w(&pa, norm) - 0.5 * n).abs() <= DECISION_TOL * n;
        for j in 0..8 {
            let theta = 2.0 * PI * j as f64 / 8.0;
            let (re, im) = a.rotate(theta).cartesian_parts();
            t.acc.case();
            if !premise {
                continue;
            }
            let par = parallel_witness_with(&re, &im, norm, &circle())?;
            let slack = (par.threshold - par.gap) / (norm.eval(&re) + norm.eval(&im));
            t.acc.implication(true, par.is_parallel, slack, || {
                wit(format!("θ = {theta}, gap {:e}, {}", par.gap, tag(k, norm)), &[&a])
            });
        }
    }
    Ok(())
}

pub(super) fn lemma_bp_6_upper(t: &mut Trial) -> Result<()> {
    let k = key(t);
    let a = t.single();
    let parts = spectral::polar(&a);
    let half = spectral::modulus_power(&a, 0.5);
    let al = spectral::aluthge(&a);
    let (pal, pu) = (profile(&al), profile(&parts.isometry));
    for norm in t.norms {
        let nh = norm.eval(&half);
        t.acc.case();
        t.acc
            .ineq(w(&pal, norm), nh * nh * w(&pu, norm), || wit(tag(k, norm), &[&a]));
    }
    Ok(())
}

/// The norm-dual element `S` of a Hermitian `H`: a Hermitian with
/// `tr(SH) = N(H)·N*(S)`, so `tr(SB) = 0` forces `H ⊥_N B` for Hermitian `B`.
fn hermitian_dual(h: &ComplexMatrix, norm: &NormSpec) -> Result<ComplexMatrix> {
    let eig = spectral::hermitian_eig(h)?;
    if norm.is_operator() {
        let k = (0..eig.eigenvalues.len())
            .max_by(|&i, &j| eig.eigenvalues[i].abs().total_cmp(&eig.eigenvalues[j].abs()))
            .expect("nonempty");
        let v = eig.basis.column(k);
        let s = eig.eigenvalues[k].signum();
        return Ok(rank_one(&v, &v)?.scale_real(s));
    }
    let p = norm.p();
    Ok(eig.map(|l| {
        if l == 0.0 {
            0.0
        } else {
            l.signum() * l.abs().powf(p - 1.0)
        }
    }))
}

pub(super) fn prop_bjn_1(t: &mut Trial) -> Result<()> {
    let k = key(t);
    let h = t.single();
    let psi = t.rng.unimodular();
    let tt = h.scale(psi);
    let constructed = t.index % 2 == 0;
    let norms = t.norms.to_vec();
    for norm in &norms {
        let a = if constructed {
            let s = hermitian_dual(&h, norm)?;
            let r = hermitian(t.dim, &mut t.rng);
            let c = s.matmul(&r).trace().re / s.frobenius_sq();
            r.add_scaled(C64::new(-c, 0.0), &s).scale(psi)
        } else {
            ginibre(t.dim, &mut t.rng)
        };
        t.acc.case();
        let prem = wn_orthogonal_with(&tt, &a, norm, &coarse(), 1e-7)?;
        let d = prem.drop() / prem.base;
        if d > DECISION_TOL && d < 10.0 * DECISION_TOL {
            t.acc.dead_band += 1;
            continue;
        }
        let concl = bj_orthogonal(&tt, &a, norm)?;
        let slack = -concl.drop() / concl.base;
        t.acc.implication(d <= DECISION_TOL, concl.is_orthogonal, slack, || {
            wit(format!("T ⊥_w A but not T ⊥_N A, {}", tag(k, norm)), &[&tt, &a])
        });
    }
    Ok(())
}

pub(super) fn prop_bjn_2(t: &mut Trial) -> Result<()> {
    let k = key(t);
    let tt = t.single();
    let parts = spectral::svd(&tt);
    let u = parts.right.column(0);
    let v = parts.left.column(0);
    let constructed = t.index % 2 == 0;
    let norms = t.norms.to_vec();
    let pt = profile(&tt);
    for norm in &norms {
        let r = ginibre(t.dim, &mut t.rng);
        let a = if constructed {
            let c = inner(&r.matvec(&u), &v);
            r.add_scaled(-c, &rank_one(&v, &u)?)
        } else {
            r
        };
        t.acc.case();
        let nt = norm.eval(&tt);
        let half = (w(&pt, norm) - 0.5 * nt).abs() <= DECISION_TOL * nt;
        let orth = bj_orthogonal(&tt, &a, norm)?;
        let d = orth.drop() / orth.base;
        if d > DECISION_TOL && d < 10.0 * DECISION_TOL {
            t.acc.dead_band += 1;
            continue;
        }
        let premise = half && d <= DECISION_TOL;
        if !premise {
            continue;
        }
        let concl = wn_orthogonal_with(&tt, &a, norm, &coarse(), 1e-7)?;
        let slack = -concl.drop() / concl.base;
        t.acc.implication(true, concl.is_orthogonal, slack, || {
            wit(format!("T ⊥_N A but not T ⊥_w A, {}", tag(k, norm)), &[&tt, &a])
        });
    }
    Ok(())
}

/// A normaloid that is not normal: `e^{iψ} ⊕ N` with `N` nilpotent and
/// `‖N‖ < 1`.
fn normaloid_sum(t: &mut Trial) -> ComplexMatrix {
    let psi = t.rng.unimodular();
    let head = ComplexMatrix::from_diag(&[psi]);
    if t.dim == 1 {
        return head;
    }
    let nil = nilpotent(t.dim - 1, &mut t.rng);
    let n = NormSpec::operator().eval(&nil);
    let nil = if n > 0.0 { nil.scale_real(0.9 / n) } else { nil };
    head.direct_sum(&nil)
}

pub(super) fn thm_cotasuperior(t: &mut Trial) -> Result<()> {
    let k = key(t);
    let norms = t.norms.to_vec();
    for norm in &norms {
        let label = tag(k, norm);
        gated(t, label, |t, positive| {
            let a = if !positive {
                t.single()
            } else if (t.index / 2) % 2 == 0 {
                rotated_hermitian(t)
            } else if norm.is_operator() {
                normaloid_sum(t)
            } else if norm.is_schatten(1.0) {
                t.single_of(EnsembleKind::RankOne)
            } else {
                rotated_hermitian(t)
            };
            let adj = a.adjoint();
            let (na, nadj) = (norm.eval(&a), norm.eval(&adj));
            let wa = wn_max(&a, norm).value;
            let par = parallel_witness_with(&a, &adj, norm, &circle())?;
            Ok((
                vec![
                    Decision::new(
                        "w=½(N(A)+N(A*))",
                        ((0.5 * (na + nadj) - wa) / na).max(0.0),
                        DECISION_TOL,
                    ),
                    Decision::new("A∥A*", par.gap / (na + nadj), DECISION_TOL),
                    Decision::new("w=N(A)", ((na - wa) / na).max(0.0), DECISION_TOL),
                ],
                vec![a],
            ))
        })?;
    }
    Ok(())
}

pub(super) fn cor_p_normaloid(t: &mut Trial) -> Result<()> {
    let k = key(t);
    let norms = t.norms.to_vec();
    for norm in &norms {
        let p = norm.p();
        let label = tag(k, norm);
        gated(t, label, |t, positive| {
            let a = if positive { rotated_hermitian(t) } else { t.single() };
            let adj = a.adjoint();
            let na = norm.eval(&a);
            let wa = wn_max(&a, norm).value;
            let par = parallel_witness_with(&a, &adj, norm, &circle())?;
            let tc = trace_condition_sides(&a, &adj, p)?;
            let tc_adj = trace_condition_sides(&adj, &a, p)?;
            Ok((
                vec![
                    Decision::new("w=N", ((na - wa) / na).max(0.0), DECISION_TOL),
                    Decision::new("A∥A*", par.gap / (2.0 * na), DECISION_TOL),
                    Decision::new("trace(A,A*)", tc.defect(), TRACE_TOL),
                    Decision::new("trace(A*,A)", tc_adj.defect(), TRACE_TOL),
                    Decision::new("A=αA*", dependence_ratio(&a, &adj)?, DEPENDENCE_TOL),
                ],
                vec![a],
            ))
        })?;
    }
    Ok(())
}

pub(super) fn cor_w1_conditions(t: &mut Trial) -> Result<()> {
    let label = format!("p:1 n={} trial={}", t.dim, t.index);
    gated(t, label, |t, positive| {
        let a = if !positive {
            t.single()
        } else if (t.index / 2) % 2 == 0 {
            rotated_hermitian(t)
        } else {
            t.single_of(EnsembleKind::RankOne)
        };
        let conds = w1_parallel_conditions_with(&a, &circle(), &MaxSearch::default())?;
        let ds = conds
            .all()
            .into_iter()
            .map(|(name, c)| Decision::new(name, c.defect, DECISION_TOL))
            .collect();
        Ok((ds, vec![a]))
    })
}

pub(super) fn prop_p_equiv(t: &mut Trial) -> Result<()> {
    let k = key(t);
    let a = t.single();
    let pa = profile(&a);
    for norm in t.norms {
        let p = norm.p();
        let n = norm.eval(&a);
        let c = if p <= 2.0 {
            2f64.powf(-1.0 / p)
        } else {
            2f64.powf(1.0 / p - 1.0)
        };
        let wa = w(&pa, norm);
        t.acc.case();
        t.acc
            .ineq(c * n, wa, || wit(format!("lower bound, {}", tag(k, norm)), &[&a]));
        t.acc
            .ineq(wa, n, || wit(format!("upper bound, {}", tag(k, norm)), &[&a]));
    }
    Ok(())
}

pub(super) fn prop_w1_degenerate(t: &mut Trial) -> Result<()> {
    let k = key(t);
    let trace = NormSpec::trace();
    let kinds = t.ensembles.to_vec();
    for kind in kinds {
        let sample = kind.draw(t.dim, &mut t.rng);
        for a in sample.matrices() {
            if a.is_zero() {
                continue;
            }
            let n1 = trace.eval(a);
            let w1 = wn_max(a, &trace).value;
            t.acc.case();
            t.acc.ineq((0.5 + 1e-6) * n1, w1, || {
                wit(format!("{} n={} trial={}", kind.name(), k.0, k.1), &[a])
            });
        }
    }
    Ok(())
}

pub(super) fn cor_rank_one_anchors(acc: &mut Tally, _: &[NormSpec]) -> Result<()> {
    let (e1, e2) = (basis(2, 0), basis(2, 1));
    let t = rank_one(&e1, &e2)?;
    let w1 = wn_max(&t, &NormSpec::trace()).value;
    acc.case();
    acc.equal(w1, 1.0, 1.0, || wit("w₁(e₁⊗e₂) ≠ 1".into(), &[&t]));
    acc.keep(wit(
        format!("p = 1: w₁(e₁⊗e₂) = {w1} = ‖e₁‖‖e₂‖ with e₁, e₂ independent"),
        &[&t],
    ));
    Ok(())
}

pub(super) fn cor_rank_one(t: &mut Trial) -> Result<()> {
    let k = key(t);
    let norms = t.norms.to_vec();
    for norm in &norms {
        if norm.is_schatten(1.0) {
            // every rank-one operator attains w₁ = ‖x‖‖y‖
            let x = t.rng.gaussian_vector(t.dim);
            let y = t.rng.gaussian_vector(t.dim);
            let a = rank_one(&x, &y)?;
            let target = vec_norm(&x) * vec_norm(&y);
            t.acc.case();
            t.acc.equal(wn_max(&a, norm).value, target, target, || {
                wit(format!("w₁(x⊗y) = ‖x‖‖y‖, {}", tag(k, norm)), &[&a])
            });
            continue;
        }
        let label = tag(k, norm);
        gated(t, label, |t, positive| {
            let x = t.rng.gaussian_vector(t.dim);
            let y = if positive {
                let c = t.rng.complex_gaussian();
                x.iter().map(|z| z * c).collect()
            } else {
                t.rng.gaussian_vector(t.dim)
            };
            let a = rank_one(&x, &y)?;
            let (nx, ny) = (vec_norm(&x), vec_norm(&y));
            let d1 = ((nx * ny - wn_max(&a, norm).value) / (nx * ny)).max(0.0);
            let d2 = (1.0 - inner(&x, &y).norm_sqr() / (nx * nx * ny * ny)).max(0.0);
            Ok((
                vec![
                    Decision::new("w=‖x‖‖y‖", d1, DECISION_TOL),
                    Decision::new("dependent", d2, DEPENDENCE_TOL),
                ],
                vec![a],
            ))
        })?;
    }
    Ok(())
}

fn buzano(acc: &mut Tally, x: &[C64], y: &[C64], z: &[C64], label: &str) -> Result<()> {
    let lhs = (inner(x, z) * inner(z, y)).norm();
    let rhs = 0.5 * (inner(x, y).norm() + vec_norm(x) * vec_norm(y));
    let t = rank_one(x, y)?;
    let zz = rank_one(z, z)?;
    let wt = numerical_radius(&t).value;
    acc.case();
    acc.ineq(lhs, rhs, || wit(format!("{label}: matrices x⊗y, z⊗z"), &[&t, &zz]));
    acc.equal(wt, rhs, rhs, || {
        wit(format!("{label}: w(x⊗y) = ½(|⟨x,y⟩| + ‖x‖‖y‖)"), &[&t])
    });
    Ok(())
}

pub(super) fn rem_buzano_anchors(acc: &mut Tally, _: &[NormSpec]) -> Result<()> {
    let (e1, e2) = (basis(2, 0), basis(2, 1));
    let z: Vec<C64> = e1.iter().zip(&e2).map(|(a, b)| (a + b) * FRAC_1_SQRT_2).collect();
    buzano(acc, &e1, &e2, &z, "equality case")?;
    acc.keep(wit(
        "equality: x = e₁, y = e₂, z = (e₁+e₂)/√2, both sides ½ (matrices x⊗y, z⊗z)".into(),
        &[&rank_one(&e1, &e2)?, &rank_one(&z, &z)?],
    ));
    Ok(())
}

pub(super) fn rem_buzano(t: &mut Trial) -> Result<()> {
    let x = t.rng.unit_vector(t.dim);
    let y = t.rng.unit_vector(t.dim);
    let z = t.rng.unit_vector(t.dim);
    let label = format!("n={} trial={}", t.dim, t.index);
    buzano(&mut t.acc, &x, &y, &z, &label)
}

pub(super) fn eq_ineq_producto(t: &mut Trial) -> Result<()> {
    let k = key(t);
    let (a, x) = t.pair();
    let ax = a.matmul(&x);
    let (pax, pa, px) = (profile(&ax), profile(&a), profile(&x));
    for norm in t.norms {
        let (nax, na, nx) = (norm.eval(&ax), norm.eval(&a), norm.eval(&x));
        t.acc.case();
        t.acc.ineq(w(&pax, norm), nax, || {
            wit(format!("w_N(AX) ≤ N(AX), {}", tag(k, norm)), &[&a, &x])
        });
        t.acc.ineq(nax, na * nx, || {
            wit(format!("N(AX) ≤ N(A)N(X), {}", tag(k, norm)), &[&a, &x])
        });
        t.acc.ineq(na * nx, 4.0 * w(&pa, norm) * w(&px, norm), || {
            wit(format!("N(A)N(X) ≤ 4w_N(A)w_N(X), {}", tag(k, norm)), &[&a, &x])
        });
    }
    Ok(())
}

pub(super) fn thm_product_dna(t: &mut Trial) -> Result<()> {
    let k = key(t);
    let (a, x) = t.pair();
    let ax = a.matmul(&x);
    let (pax, pa, px) = (profile(&ax), profile(&a), profile(&x));
    for norm in t.norms {
        let na = norm.eval(&a);
        let d = scalar_distance(&a, norm).distance;
        let wx = w(&px, norm);
        t.acc.case();
        t.acc.ineq(w(&pax, norm), (na + d) * wx, || {
            wit(format!("w_N(AX) ≤ (N(A)+D)w_N(X), {}", tag(k, norm)), &[&a, &x])
        });
        t.acc.ineq(d, na, || wit(format!("D ≤ N(A), {}", tag(k, norm)), &[&a]));
        t.acc.ineq(2.0 * na * wx, 4.0 * w(&pa, norm) * wx, || {
            wit(format!("2N(A)w_N(X) ≤ 4w_N(A)w_N(X), {}", tag(k, norm)), &[&a, &x])
        });
    }
    Ok(())
}

pub(super) fn cor_commute_star(t: &mut Trial) -> Result<()> {
    let k = key(t);
    let (a, x) = t.pair();
    let ax = a.matmul(&x);
    let (pax, px) = (profile(&ax), profile(&x));
    for norm in t.norms {
        t.acc.case();
        t.acc.ineq(w(&pax, norm), norm.eval(&a) * w(&px, norm), || {
            wit(tag(k, norm), &[&a, &x])
        });
    }
    Ok(())
}

pub(super) fn lemma_bhatia_zhan(t: &mut Trial) -> Result<()> {
    let k = key(t);
    let tm = t.single();
    let (re, im) = tm.cartesian_parts();
    let both = t.kind == EnsembleKind::AccretiveDissipative;
    for norm in t.norms {
        let p = norm.p();
        let (nt, na, nb) = (norm.eval(&tm), norm.eval(&re), norm.eval(&im));
        t.acc.case();
        t.acc.ineq(nt * nt, na * na + 2f64.powf(1.0 - 2.0 / p) * nb * nb, || {
            wit(format!("accretive bound, {}", tag(k, norm)), &[&tm])
        });
        if both {
            t.acc.ineq(nt * nt, na * na + nb * nb, || {
                wit(format!("accretive-dissipative bound, {}", tag(k, norm)), &[&tm])
            });
        }
    }
    Ok(())
}

pub(super) fn thm_accretive(t: &mut Trial) -> Result<()> {
    let k = key(t);
    let x = t.single();
    let a = ginibre(t.dim, &mut t.rng);
    let both = t.kind == EnsembleKind::AccretiveDissipative;
    let ax = a.matmul(&x);
    let (pax, px) = (profile(&ax), profile(&x));
    let na = NormSpec::operator().eval(&a);
    for norm in t.norms {
        let p = norm.p();
        let (lhs, wx) = (w(&pax, norm), w(&px, norm));
        t.acc.case();
        t.acc.ineq(lhs, (1.0 + 2f64.powf(1.0 - 2.0 / p)).sqrt() * na * wx, || {
            wit(format!("accretive constant, {}", tag(k, norm)), &[&a, &x])
        });
        if both {
            t.acc.ineq(lhs, SQRT_2 * na * wx, || {
                wit(format!("accretive-dissipative constant, {}", tag(k, norm)), &[&a, &x])
            });
        }
    }
    Ok(())
}

pub(super) fn eq_cota_nui(t: &mut Trial) -> Result<()> {
    let k = key(t);
    let (a, b) = t.pair();
    let ab = a.matmul(&b);
    let ba = b.matmul(&a);
    let (pab, pba) = (profile(&ab), profile(&ba));
    for norm in t.norms {
        let nab = norm.eval(&ab);
        let wab = w(&pab, norm);
        t.acc.case();
        t.acc.equal(wab, nab, nab, || {
            wit(format!("w_N(AB) = N(AB), {}", tag(k, norm)), &[&a, &b])
        });
        t.acc.ineq(nab, w(&pba, norm), || {
            wit(format!("N(AB) ≤ w_N(BA), {}", tag(k, norm)), &[&a, &b])
        });
    }
    Ok(())
}

pub(super) fn thm_th987_anchors(acc: &mut Tally, _: &[NormSpec]) -> Result<()> {
    let p = ComplexMatrix::from_real_diag(&[1.0, 0.0]);
    let i = ComplexMatrix::identity(2);
    let independent = dependence_ratio(&p, &i)? > DEPENDENCE_TOL;
    for norm in [NormSpec::trace(), NormSpec::operator()] {
        let par = parallel_witness_with(&p, &i, &norm, &circle())?;
        acc.case();
        acc.require(par.is_parallel && independent, || {
            wit(format!("diag(1,0) ∦ I in {}", norm.label()), &[&p, &i])
        });
    }
    acc.keep(wit(
        "diag(1,0) ∥ I in the trace and operator norms while independent".into(),
        &[&p, &i],
    ));
    Ok(())
}

pub(super) fn thm_th987(t: &mut Trial) -> Result<()> {
    let k = key(t);
    let norms = t.norms.to_vec();
    for norm in &norms {
        let p = norm.p();
        if !(p > 1.0 && p.is_finite()) {
            // only dependence ⇒ parallelism survives at p = 1 and p = ∞
            let a = t.single();
            let b = a.scale(t.rng.complex_gaussian());
            let par = parallel_witness_with(&a, &b, norm, &circle())?;
            t.acc.case();
            t.acc.require(par.is_parallel, || {
                wit(format!("dependent but not parallel, {}", tag(k, norm)), &[&a, &b])
            });
            continue;
        }
        let label = tag(k, norm);
        gated(t, label, |t, positive| {
            let a = t.single();
            let b = if positive {
                a.scale(t.rng.complex_gaussian())
            } else {
                t.single()
            };
            let par = parallel_witness_with(&a, &b, norm, &circle())?;
            let tc = trace_condition_sides(&a, &b, p)?;
            Ok((
                vec![
                    Decision::new("A∥B", par.gap / (norm.eval(&a) + norm.eval(&b)), DECISION_TOL),
                    Decision::new("dependent", dependence_ratio(&a, &b)?, DEPENDENCE_TOL),
                    Decision::new("trace", tc.defect(), TRACE_TOL),
                ],
                vec![a, b],
            ))
        })?;
    }
    Ok(())
}

fn aluthge_w2(acc: &mut Tally, a: &ComplexMatrix, label: &str) {
    let hs = NormSpec::hilbert_schmidt();
    let al = spectral::aluthge(a);
    let wa = wn_max(a, &hs).value;
    let wal = wn_max(&al, &hs).value;
    acc.case();
    acc.claim_equal(wal, wa, wa, || {
        wit(format!("{label}: w₂(A) = {wa}, w₂(Ã) = {wal}"), &[a, &al])
    });
}

pub(super) fn scrutiny_aluthge_w2_anchors(acc: &mut Tally, _: &[NormSpec]) -> Result<()> {
    aluthge_w2(acc, &jordan(), "A = [[0,1],[0,0]]");
    Ok(())
}

pub(super) fn scrutiny_aluthge_w2(t: &mut Trial) -> Result<()> {
    let a = t.single();
    let label = format!("{} n={} trial={}", t.kind.name(), t.dim, t.index);
    aluthge_w2(&mut t.acc, &a, &label);
    Ok(())
}

fn bp_6_lower(acc: &mut Tally, a: &ComplexMatrix, norms: &[NormSpec], label: &str) {
    let m = spectral::modulus(a);
    let al = spectral::aluthge(a);
    let (pm, pal) = (profile(&m), profile(&al));
    for norm in norms {
        let lhs = 0.5 * w(&pm, norm);
        let rhs = w(&pal, norm);
        acc.case();
        acc.claim_ineq(lhs, rhs, || {
            wit(
                format!("{label}, {}: ½w_N(|A|) = {lhs}, w_N(Ã) = {rhs}", norm.label()),
                &[a, &al],
            )
        });
    }
}

pub(super) fn scrutiny_bp_6_lower_anchors(acc: &mut Tally, norms: &[NormSpec]) -> Result<()> {
    let mut norms = norms.to_vec();
    if !norms.iter().any(|n| n.is_schatten(1.0)) {
        norms.insert(0, NormSpec::trace());
    }
    norms.sort_by_key(|n| !n.is_schatten(1.0));
    bp_6_lower(acc, &jordan(), &norms[..1], "A = [[0,1],[0,0]]");
    Ok(())
}

pub(super) fn scrutiny_bp_6_lower(t: &mut Trial) -> Result<()> {
    let a = t.single();
    let label = format!("{} n={} trial={}", t.kind.name(), t.dim, t.index);
    let norms = t.norms.to_vec();
    bp_6_lower(&mut t.acc, &a, &norms, &label);
    Ok(())
}
