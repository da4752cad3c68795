//! The Gelfand-MacPherson pipeline: maps from the semistable locus into the
//! two quiver Grassmannians, the saturation check for the framed loci, and
//! the orbit-level verification that both Grassmannian quotients match the
//! moduli of representations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::framing::{
    build_framed, enumerate_matrix_tuples, framed_param_theta, FramedKind, VerifyReport,
};
use crate::grassmannian::{hilbert_point_phi, hilbert_point_psi, sigma_action, SubspaceTuple};
use crate::group::{enumerate_group, orbit_partition, GroupElement};
use crate::matrix::Matrix;
use crate::quiver::{DimVector, Quiver, StabilityParam};
use crate::rep::{hom_basis, proj_standard, inj_standard, Representation};
use crate::stability::{check_stability, enumerate_reps};

/// Identity framing on the nonnegative part: `(M, id)` with one identity
/// block per vertex of the plus part and an empty map elsewhere.
pub fn f_plus<K: Field>(
    m: &Representation<K>,
    theta: &StabilityParam,
) -> (DimVector, Vec<Matrix<K>>) {
    let beta = m.dim().restricted(&theta.plus_mask());
    let framing = (0..m.quiver().num_vertices())
        .map(|v| {
            Matrix::from_fn(m.dim().0[v], beta.0[v], |r, c| {
                if r == c {
                    K::one()
                } else {
                    K::zero()
                }
            })
        })
        .collect();
    (beta, framing)
}

/// Identity framing on the nonpositive part, mapping out of M.
pub fn f_minus<K: Field>(
    m: &Representation<K>,
    theta: &StabilityParam,
) -> (DimVector, Vec<Matrix<K>>) {
    let beta = m.dim().restricted(&theta.minus_mask());
    let framing = (0..m.quiver().num_vertices())
        .map(|v| {
            Matrix::from_fn(beta.0[v], m.dim().0[v], |r, c| {
                if r == c {
                    K::one()
                } else {
                    K::zero()
                }
            })
        })
        .collect();
    (beta, framing)
}

/// Kernel of the canonical projective cover map of a semistable M, as a
/// point of the quotient Grassmannian.
pub fn gm_phi<K: Field>(
    m: &Representation<K>,
    theta: &StabilityParam,
    budget: &mut Budget,
) -> Result<SubspaceTuple<K>> {
    if !check_stability(m, theta, budget)?.is_semistable() {
        return Err(Error::NotSemistable);
    }
    let (beta, framing) = f_plus(m, theta);
    hilbert_point_phi(m, &beta, &framing)
}

/// Image of the canonical injective envelope map of a semistable M, as a
/// point of the subrepresentation Grassmannian.
pub fn gm_psi<K: Field>(
    m: &Representation<K>,
    theta: &StabilityParam,
    budget: &mut Budget,
) -> Result<SubspaceTuple<K>> {
    if !check_stability(m, theta, budget)?.is_semistable() {
        return Err(Error::NotSemistable);
    }
    let (beta, framing) = f_minus(m, theta);
    hilbert_point_psi(m, &beta, &framing)
}

/// Isomorphism test: true iff some homomorphism M -> N is invertible at
/// every vertex; the witness conjugates M onto N.
pub fn rep_isomorphic<K: Field>(
    m: &Representation<K>,
    n: &Representation<K>,
    budget: &mut Budget,
) -> Result<Option<GroupElement<K>>> {
    if m.dim() != n.dim() {
        return Ok(None);
    }
    let basis = hom_basis(m, n);
    let elems = K::elements().expect("isomorphism search needs a finite field");
    let d = basis.len();
    let mut assignment = vec![0usize; d];
    loop {
        budget.charge(1)?;
        let nv = m.quiver().num_vertices();
        let mut f: Vec<Matrix<K>> = (0..nv)
            .map(|v| Matrix::zeros(n.dim().0[v], m.dim().0[v]))
            .collect();
        for (i, coeff_idx) in assignment.iter().enumerate() {
            let c = elems[*coeff_idx].clone();
            if c.is_zero() {
                continue;
            }
            for v in 0..nv {
                f[v] = f[v].add(&basis[i][v].scale(&c));
            }
        }
        if f.iter().all(Matrix::is_invertible) {
            return Ok(Some(GroupElement { blocks: f }));
        }
        let mut i = d;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            assignment[i] += 1;
            if assignment[i] < elems.len() {
                break;
            }
            assignment[i] = 0;
        }
    }
}

fn act_framing_plus<K: Field>(
    g: &GroupElement<K>,
    h: &GroupElement<K>,
    framing: &[Matrix<K>],
) -> Result<Vec<Matrix<K>>> {
    framing
        .iter()
        .enumerate()
        .map(|(i, a)| Ok(g.blocks[i].matmul(a).matmul(&h.blocks[i].invert()?)))
        .collect()
}

fn act_framing_minus<K: Field>(
    g: &GroupElement<K>,
    h: &GroupElement<K>,
    framing: &[Matrix<K>],
) -> Result<Vec<Matrix<K>>> {
    framing
        .iter()
        .enumerate()
        .map(|(i, b)| Ok(h.blocks[i].matmul(b).matmul(&g.blocks[i].invert()?)))
        .collect()
}

/// Saturation of the identity-framed loci: every group translate of an
/// identity-framed (semi)stable point is (semi)stable for the derived
/// parameter, and conversely every (semi)stable framed point is a group
/// translate of an identity-framed one, reconstructed explicitly from the
/// invertible framing blocks.
pub fn verify_saturation<K: Field>(
    base: &Arc<Quiver>,
    alpha: &DimVector,
    theta: &StabilityParam,
    n_value: i64,
    budget: &mut Budget,
) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("saturation");
    report.param("alpha", alpha);
    report.param("N", n_value);
    report.param("field", K::spec());
    let total = theta.value(alpha);
    if total != 0 {
        return Err(Error::ThetaAlphaNonzero(total));
    }
    let reps = enumerate_reps::<K>(base, alpha, budget)?;
    let group_alpha = enumerate_group::<K>(&alpha.0, budget)?;
    let (plus_mask, minus_mask) = theta.split();
    let nv = base.num_vertices();

    // plus side
    {
        let beta = alpha.restricted(&plus_mask);
        let fq = build_framed(base, &beta, FramedKind::SourceCopies)?;
        let theta_plus = framed_param_theta(&fq, theta, alpha, n_value)?;
        let group_beta = enumerate_group::<K>(&beta.0, budget)?;
        for m in &reps {
            let verdict = check_stability(m, theta, budget)?;
            if !verdict.is_semistable() {
                continue;
            }
            let (_, id_framing) = f_plus(m, theta);
            for g in &group_alpha {
                let gm = m.transform(g)?;
                for h in &group_beta {
                    report.checked += 1;
                    let framing = act_framing_plus(g, h, &id_framing)?;
                    let emb = fq.embed(&gm, &framing)?;
                    let fv = check_stability(&emb, &theta_plus, budget)?;
                    if !fv.is_semistable() || fv.is_stable() != verdict.is_stable() {
                        report.failures.push(format!(
                            "plus translate of M={:?} not in expected locus",
                            m.maps()
                        ));
                    }
                }
            }
        }
        // converse inclusion
        let shapes: Vec<(usize, usize)> = (0..nv).map(|i| (alpha.0[i], beta.0[i])).collect();
        for m in &reps {
            let base_verdict = check_stability(m, theta, budget)?;
            for a in &enumerate_matrix_tuples::<K>(&shapes, budget)? {
                report.checked += 1;
                let emb = fq.embed(m, a)?;
                let fv = check_stability(&emb, &theta_plus, budget)?;
                if !fv.is_semistable() {
                    continue;
                }
                let invertible = (0..nv)
                    .filter(|&i| plus_mask[i])
                    .all(|i| a[i].is_invertible());
                if !invertible || !base_verdict.is_semistable() {
                    report.failures.push(format!(
                        "plus framed point M={:?} A={:?} semistable but not a translate",
                        m.maps(),
                        a
                    ));
                    continue;
                }
                if fv.is_stable() != base_verdict.is_stable() {
                    report.failures.push(format!(
                        "plus framed point M={:?} A={:?}: stable loci disagree",
                        m.maps(),
                        a
                    ));
                }
                // explicit witness: h = A^{-1} on the plus part, g = id
                let h = GroupElement {
                    blocks: (0..nv)
                        .map(|i| {
                            if plus_mask[i] {
                                a[i].invert()
                            } else {
                                Ok(Matrix::identity(0))
                            }
                        })
                        .collect::<Result<_>>()?,
                };
                let g = GroupElement::identity(&alpha.0);
                let (_, id_framing) = f_plus(m, theta);
                let translated = act_framing_plus(&g, &h, &id_framing)?;
                if &translated != a {
                    report.failures.push(format!(
                        "plus witness reconstruction failed for A={a:?}"
                    ));
                }
            }
        }
    }

    // minus side
    {
        let beta = alpha.restricted(&minus_mask);
        let fq = build_framed(base, &beta, FramedKind::SinkCopies)?;
        let theta_minus = framed_param_theta(&fq, theta, alpha, n_value)?;
        let group_beta = enumerate_group::<K>(&beta.0, budget)?;
        for m in &reps {
            let verdict = check_stability(m, theta, budget)?;
            if !verdict.is_semistable() {
                continue;
            }
            let (_, id_framing) = f_minus(m, theta);
            for g in &group_alpha {
                let gm = m.transform(g)?;
                for h in &group_beta {
                    report.checked += 1;
                    let framing = act_framing_minus(g, h, &id_framing)?;
                    let emb = fq.embed(&gm, &framing)?;
                    let fv = check_stability(&emb, &theta_minus, budget)?;
                    if !fv.is_semistable() || fv.is_stable() != verdict.is_stable() {
                        report.failures.push(format!(
                            "minus translate of M={:?} not in expected locus",
                            m.maps()
                        ));
                    }
                }
            }
        }
        let shapes: Vec<(usize, usize)> = (0..nv).map(|i| (beta.0[i], alpha.0[i])).collect();
        for m in &reps {
            let base_verdict = check_stability(m, theta, budget)?;
            for b in &enumerate_matrix_tuples::<K>(&shapes, budget)? {
                report.checked += 1;
                let emb = fq.embed(m, b)?;
                let fv = check_stability(&emb, &theta_minus, budget)?;
                if !fv.is_semistable() {
                    continue;
                }
                let invertible = (0..nv)
                    .filter(|&i| minus_mask[i])
                    .all(|i| b[i].is_invertible());
                if !invertible || !base_verdict.is_semistable() {
                    report.failures.push(format!(
                        "minus framed point M={:?} B={:?} semistable but not a translate",
                        m.maps(),
                        b
                    ));
                    continue;
                }
                if fv.is_stable() != base_verdict.is_stable() {
                    report.failures.push(format!(
                        "minus framed point M={:?} B={:?}: stable loci disagree",
                        m.maps(),
                        b
                    ));
                }
                let h = GroupElement {
                    blocks: (0..nv)
                        .map(|i| {
                            if minus_mask[i] {
                                Ok(b[i].clone())
                            } else {
                                Ok(Matrix::identity(0))
                            }
                        })
                        .collect::<Result<_>>()?,
                };
                let g = GroupElement::identity(&alpha.0);
                let (_, id_framing) = f_minus(m, theta);
                let translated = act_framing_minus(&g, &h, &id_framing)?;
                if &translated != b {
                    report.failures.push(format!(
                        "minus witness reconstruction failed for B={b:?}"
                    ));
                }
            }
        }
    }
    Ok(report)
}

/// Random spot-check of the equivariance identity: translating a framed
/// point by (h, g) moves its kernel point by the multiplicity action of h,
/// and dually for images.
pub fn verify_equivariance_random<K: Field>(
    base: &Arc<Quiver>,
    alpha: &DimVector,
    theta: &StabilityParam,
    samples: usize,
    seed: u64,
    budget: &mut Budget,
) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("equivariance");
    report.param("alpha", alpha);
    report.param("samples", samples);
    report.param("seed", seed);
    report.param("field", K::spec());
    let elems = K::elements().expect("random sweep needs a finite field");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nv = base.num_vertices();
    let (plus_mask, minus_mask) = theta.split();
    let beta_plus = alpha.restricted(&plus_mask);
    let beta_minus = alpha.restricted(&minus_mask);
    let (_, p_basis) = proj_standard::<K>(base, &beta_plus);
    let (_, i_basis) = inj_standard::<K>(base, &beta_minus);

    let rand_matrix = |rng: &mut ChaCha8Rng, r: usize, c: usize| {
        Matrix::from_fn(r, c, |_, _| elems[rng.gen_range(0..elems.len())].clone())
    };
    let rand_invertible = |rng: &mut ChaCha8Rng, n: usize| loop {
        let m = Matrix::from_fn(n, n, |_, _| elems[rng.gen_range(0..elems.len())].clone());
        if m.is_invertible() {
            return m;
        }
    };

    let mut done = 0;
    while done < samples {
        budget.charge(1)?;
        let maps: Vec<Matrix<K>> = base
            .arrows()
            .iter()
            .map(|a| rand_matrix(&mut rng, alpha.0[a.dst], alpha.0[a.src]))
            .collect();
        let m = Representation::new(base.clone(), alpha.clone(), maps)?;
        let a: Vec<Matrix<K>> = (0..nv)
            .map(|i| rand_matrix(&mut rng, alpha.0[i], beta_plus.0[i]))
            .collect();
        let b: Vec<Matrix<K>> = (0..nv)
            .map(|i| rand_matrix(&mut rng, beta_minus.0[i], alpha.0[i]))
            .collect();
        let Ok(pt_phi) = hilbert_point_phi(&m, &beta_plus, &a) else {
            continue; // outside the degree-zero locus; resample
        };
        let Ok(pt_psi) = hilbert_point_psi(&m, &beta_minus, &b) else {
            continue;
        };
        done += 1;
        report.checked += 1;

        let g = GroupElement {
            blocks: (0..nv).map(|i| rand_invertible(&mut rng, alpha.0[i])).collect(),
        };
        let h_plus = GroupElement {
            blocks: (0..nv)
                .map(|i| rand_invertible(&mut rng, beta_plus.0[i]))
                .collect(),
        };
        let h_minus = GroupElement {
            blocks: (0..nv)
                .map(|i| rand_invertible(&mut rng, beta_minus.0[i]))
                .collect(),
        };

        let gm = m.transform(&g)?;
        let a2 = act_framing_plus(&g, &h_plus, &a)?;
        let lhs = hilbert_point_phi(&gm, &beta_plus, &a2)?;
        let rhs = sigma_action(&p_basis, &h_plus, &pt_phi);
        if lhs != rhs {
            report
                .failures
                .push(format!("phi equivariance failed for M={:?}", m.maps()));
        }

        let b2 = act_framing_minus(&g, &h_minus, &b)?;
        let lhs2 = hilbert_point_psi(&gm, &beta_minus, &b2)?;
        let rhs2 = sigma_action(&i_basis, &h_minus, &pt_psi);
        if lhs2 != rhs2 {
            report
                .failures
                .push(format!("psi equivariance failed for M={:?}", m.maps()));
        }
    }
    Ok(report)
}

/// Counts and pairings produced by the orbit-level correspondence check.
#[derive(Debug, Clone)]
pub struct CorrespondenceReport {
    pub field: String,
    pub alpha: String,
    pub theta: String,
    pub rep_count: u64,
    pub semistable_points: u64,
    pub stable_points: u64,
    pub strictly_semistable_points: u64,
    pub g_orbits_semistable: u64,
    pub g_orbits_stable: u64,
    pub phi_image_points: u64,
    pub phi_orbits_semistable: u64,
    pub phi_orbits_stable: u64,
    pub psi_image_points: u64,
    pub psi_orbits_semistable: u64,
    pub psi_orbits_stable: u64,
    /// Stable-locus pairing: one row per orbit, all three canonical
    /// representatives rendered.
    pub pairing: Vec<(String, String, String)>,
    /// How strictly semistable classes were treated.
    pub s_equivalence: String,
    pub failures: Vec<String>,
}

impl CorrespondenceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "check": "correspondence",
            "field": self.field,
            "alpha": self.alpha,
            "theta": self.theta,
            "counts": {
                "representations": self.rep_count,
                "semistable": self.semistable_points,
                "stable": self.stable_points,
                "strictly_semistable": self.strictly_semistable_points,
                "g_orbits_semistable": self.g_orbits_semistable,
                "g_orbits_stable": self.g_orbits_stable,
                "phi_image_points": self.phi_image_points,
                "phi_orbits_semistable": self.phi_orbits_semistable,
                "phi_orbits_stable": self.phi_orbits_stable,
                "psi_image_points": self.psi_image_points,
                "psi_orbits_semistable": self.psi_orbits_semistable,
                "psi_orbits_stable": self.psi_orbits_stable,
            },
            "pairing": self.pairing.iter().map(|(a, b, c)| json!({
                "rep_orbit": a, "phi_orbit": b, "psi_orbit": c,
            })).collect::<Vec<_>>(),
            "s_equivalence": self.s_equivalence,
            "failures": self.failures,
            "pass": self.passed(),
        })
    }
}

fn orbit_index_of<P: Ord>(orbits: &[Vec<P>], p: &P) -> Option<usize> {
    orbits.iter().position(|o| o.binary_search(p).is_ok())
}

/// Exhaustive orbit-level verification of the two-sided correspondence.
///
/// Computes the group orbits on the (semi)stable locus and the
/// multiplicity-group orbits on both Grassmannian images, then checks that
/// the maps are constant on orbits, that the images are invariant, that the
/// induced orbit maps are bijections on the stable locus with mutually
/// inverse pairings, and that the identity-framed orbit set coincides with
/// the independently characterized (semi)stable framed orbit set.
pub fn verify_correspondence<K: Field>(
    base: &Arc<Quiver>,
    alpha: &DimVector,
    theta: &StabilityParam,
    budget: &mut Budget,
) -> Result<CorrespondenceReport> {
    let total = theta.value(alpha);
    if total != 0 {
        return Err(Error::ThetaAlphaNonzero(total));
    }
    let nv = base.num_vertices();
    let (plus_mask, minus_mask) = theta.split();
    let beta_plus = alpha.restricted(&plus_mask);
    let beta_minus = alpha.restricted(&minus_mask);
    let (_, p_basis) = proj_standard::<K>(base, &beta_plus);
    let (_, i_basis) = inj_standard::<K>(base, &beta_minus);

    let mut failures: Vec<String> = Vec::new();
    let reps = enumerate_reps::<K>(base, alpha, budget)?;
    let mut sst: Vec<Representation<K>> = Vec::new();
    let mut stable: Vec<Representation<K>> = Vec::new();
    for m in &reps {
        let v = check_stability(m, theta, budget)?;
        if v.is_semistable() {
            sst.push(m.clone());
        }
        if v.is_stable() {
            stable.push(m.clone());
        }
    }

    let group_alpha = enumerate_group::<K>(&alpha.0, budget)?;
    let act_rep = |g: &GroupElement<K>, m: &Representation<K>| {
        m.transform(g).expect("group elements are invertible")
    };
    let orbits_sst = orbit_partition(&sst, &group_alpha, act_rep);
    let orbits_stable = orbit_partition(&stable, &group_alpha, act_rep);

    // images and their orbit partitions
    let mut phi_of: BTreeMap<Representation<K>, SubspaceTuple<K>> = BTreeMap::new();
    let mut psi_of: BTreeMap<Representation<K>, SubspaceTuple<K>> = BTreeMap::new();
    for m in &sst {
        phi_of.insert(m.clone(), gm_phi(m, theta, budget)?);
        psi_of.insert(m.clone(), gm_psi(m, theta, budget)?);
    }
    let phi_image: Vec<SubspaceTuple<K>> = {
        let set: std::collections::BTreeSet<_> = phi_of.values().cloned().collect();
        set.into_iter().collect()
    };
    let psi_image: Vec<SubspaceTuple<K>> = {
        let set: std::collections::BTreeSet<_> = psi_of.values().cloned().collect();
        set.into_iter().collect()
    };
    let phi_image_stable: Vec<SubspaceTuple<K>> = {
        let set: std::collections::BTreeSet<_> =
            stable.iter().map(|m| phi_of[m].clone()).collect();
        set.into_iter().collect()
    };
    let psi_image_stable: Vec<SubspaceTuple<K>> = {
        let set: std::collections::BTreeSet<_> =
            stable.iter().map(|m| psi_of[m].clone()).collect();
        set.into_iter().collect()
    };

    let group_plus = enumerate_group::<K>(&beta_plus.0, budget)?;
    let group_minus = enumerate_group::<K>(&beta_minus.0, budget)?;

    // the images must be invariant under the multiplicity action
    for pt in &phi_image {
        for h in &group_plus {
            let moved = sigma_action(&p_basis, h, pt);
            if phi_image.binary_search(&moved).is_err() {
                failures.push("phi image is not invariant under the multiplicity action".into());
            }
        }
    }
    for pt in &psi_image {
        for h in &group_minus {
            let moved = sigma_action(&i_basis, h, pt);
            if psi_image.binary_search(&moved).is_err() {
                failures.push("psi image is not invariant under the multiplicity action".into());
            }
        }
    }

    let act_phi = |h: &GroupElement<K>, p: &SubspaceTuple<K>| sigma_action(&p_basis, h, p);
    let act_psi = |h: &GroupElement<K>, p: &SubspaceTuple<K>| sigma_action(&i_basis, h, p);
    let phi_orbits = orbit_partition(&phi_image, &group_plus, act_phi);
    let psi_orbits = orbit_partition(&psi_image, &group_minus, act_psi);
    let phi_orbits_stable = orbit_partition(&phi_image_stable, &group_plus, act_phi);
    let psi_orbits_stable = orbit_partition(&psi_image_stable, &group_minus, act_psi);

    // well-definedness on orbits (semistable level): one orbit of images
    // per orbit of representations
    for orbit in &orbits_sst {
        let targets: std::collections::BTreeSet<usize> = orbit
            .iter()
            .filter_map(|m| orbit_index_of(&phi_orbits, &phi_of[m]))
            .collect();
        if targets.len() != 1 {
            failures.push("phi is not constant on a group orbit".into());
        }
        let targets2: std::collections::BTreeSet<usize> = orbit
            .iter()
            .filter_map(|m| orbit_index_of(&psi_orbits, &psi_of[m]))
            .collect();
        if targets2.len() != 1 {
            failures.push("psi is not constant on a group orbit".into());
        }
    }

    // stable-level bijection with mutually inverse pairings
    let mut pairing = Vec::new();
    {
        let mut phi_hit = vec![false; phi_orbits_stable.len()];
        let mut psi_hit = vec![false; psi_orbits_stable.len()];
        let mut phi_assign: Vec<Option<usize>> = vec![None; phi_orbits_stable.len()];
        let mut psi_assign: Vec<Option<usize>> = vec![None; psi_orbits_stable.len()];
        for (oi, orbit) in orbits_stable.iter().enumerate() {
            let rep = &orbit[0]; // lexicographically least member
            let pi = orbit_index_of(&phi_orbits_stable, &phi_of[rep]);
            let qi = orbit_index_of(&psi_orbits_stable, &psi_of[rep]);
            match (pi, qi) {
                (Some(pi), Some(qi)) => {
                    if phi_hit[pi] || psi_hit[qi] {
                        failures.push("orbit map is not injective on the stable locus".into());
                    }
                    phi_hit[pi] = true;
                    psi_hit[qi] = true;
                    phi_assign[pi] = Some(oi);
                    psi_assign[qi] = Some(oi);
                    pairing.push((
                        format!("{:?}", rep.maps()),
                        format!("{:?}", phi_orbits_stable[pi][0]),
                        format!("{:?}", psi_orbits_stable[qi][0]),
                    ));
                }
                _ => failures.push("stable image escaped its orbit set".into()),
            }
        }
        if !phi_hit.iter().all(|&x| x) || !psi_hit.iter().all(|&x| x) {
            failures.push("orbit map is not surjective on the stable locus".into());
        }
        // mutual inverse: walking back from an image orbit recovers the
        // representation orbit
        for (pi, assigned) in phi_assign.iter().enumerate() {
            if let Some(oi) = assigned {
                let back = orbit_index_of(&phi_orbits_stable, &phi_of[&orbits_stable[*oi][0]]);
                if back != Some(pi) {
                    failures.push("phi pairing is not involutive".into());
                }
            }
        }
        for (qi, assigned) in psi_assign.iter().enumerate() {
            if let Some(oi) = assigned {
                let back = orbit_index_of(&psi_orbits_stable, &psi_of[&orbits_stable[*oi][0]]);
                if back != Some(qi) {
                    failures.push("psi pairing is not involutive".into());
                }
            }
        }
    }

    // image characterization at the framed level: the identity-framed orbit
    // set equals the orbit set of the (semi)stable framed locus, the latter
    // characterized independently by invertible framing + base stability
    {
        let framed_orbit_key = |m: &Representation<K>, fr: &Vec<Matrix<K>>| -> (Representation<K>, Vec<Matrix<K>>) {
            // canonical representative of the G(alpha)-orbit of (M, A)
            let mut best: Option<(Representation<K>, Vec<Matrix<K>>)> = None;
            for g in &group_alpha {
                let gm = m.transform(g).unwrap();
                let ga: Vec<Matrix<K>> = fr
                    .iter()
                    .enumerate()
                    .map(|(i, a)| g.blocks[i].matmul(a))
                    .collect();
                let cand = (gm, ga);
                if best.as_ref().map_or(true, |b| &cand < b) {
                    best = Some(cand);
                }
            }
            best.unwrap()
        };
        let mut identity_side: std::collections::BTreeSet<_> = std::collections::BTreeSet::new();
        for m in &sst {
            let (_, id_framing) = f_plus(m, theta);
            identity_side.insert(framed_orbit_key(m, &id_framing));
        }
        let mut characterized: std::collections::BTreeSet<_> = std::collections::BTreeSet::new();
        let shapes: Vec<(usize, usize)> = (0..nv).map(|i| (alpha.0[i], beta_plus.0[i])).collect();
        for m in &reps {
            let base_sst = check_stability(m, theta, budget)?.is_semistable();
            for a in &enumerate_matrix_tuples::<K>(&shapes, budget)? {
                let invertible = (0..nv)
                    .filter(|&i| plus_mask[i])
                    .all(|i| a[i].is_invertible());
                if base_sst && invertible {
                    characterized.insert(framed_orbit_key(m, a));
                }
            }
        }
        if identity_side != characterized {
            failures.push(format!(
                "identity-framed orbit set differs from the characterized semistable framed locus ({} vs {})",
                identity_side.len(),
                characterized.len()
            ));
        }
    }

    let strictly = sst.len() - stable.len();
    Ok(CorrespondenceReport {
        field: K::spec().to_string(),
        alpha: alpha.to_string(),
        theta: format!("{:?}", theta.0),
        rep_count: reps.len() as u64,
        semistable_points: sst.len() as u64,
        stable_points: stable.len() as u64,
        strictly_semistable_points: strictly as u64,
        g_orbits_semistable: orbits_sst.len() as u64,
        g_orbits_stable: orbits_stable.len() as u64,
        phi_image_points: phi_image.len() as u64,
        phi_orbits_semistable: phi_orbits.len() as u64,
        phi_orbits_stable: phi_orbits_stable.len() as u64,
        psi_image_points: psi_image.len() as u64,
        psi_orbits_semistable: psi_orbits.len() as u64,
        psi_orbits_stable: psi_orbits_stable.len() as u64,
        pairing,
        s_equivalence: if strictly == 0 {
            "not-applicable".to_string()
        } else {
            "unverified".to_string()
        },
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::F2;
    use crate::quiver::{linear_quiver, subspace_quiver};
    use crate::stability::subspace_theta;

    fn preset() -> (Arc<Quiver>, DimVector, StabilityParam) {
        let q = Arc::new(subspace_quiver(3));
        let alpha = DimVector(vec![1, 1, 1, 2]);
        let theta = subspace_theta(&q, &[1, 1, 1], 2).unwrap();
        (q, alpha, theta)
    }

    fn preset_rep(q: &Arc<Quiver>, vectors: &[&[i64]]) -> Representation<F2> {
        let n = vectors[0].len();
        let maps = vectors
            .iter()
            .map(|v| Matrix::from_fn(n, 1, |r, _| F2::from_int(v[r])))
            .collect();
        let mut dims = vec![1; vectors.len()];
        dims.push(n);
        Representation::new(q.clone(), DimVector(dims), maps).unwrap()
    }

    #[test]
    fn gm_maps_on_the_running_example() {
        let (q, _alpha, theta) = preset();
        let m = preset_rep(&q, &[&[1, 0], &[0, 1], &[1, 1]]);
        let mut b = Budget::standard();
        let phi_pt = gm_phi(&m, &theta, &mut b).unwrap();
        assert!(phi_pt.spaces[3].contains_vector(&[F2::new(1), F2::new(1), F2::new(1)]));
        let psi_pt = gm_psi(&m, &theta, &mut b).unwrap();
        assert_eq!(psi_pt.dims(), DimVector(vec![1, 1, 1, 2]));
    }

    #[test]
    fn gm_phi_rejects_unstable_points() {
        let (q, _alpha, theta) = preset();
        let m = preset_rep(&q, &[&[1, 0], &[1, 0], &[1, 0]]);
        let mut b = Budget::standard();
        assert_eq!(gm_phi(&m, &theta, &mut b), Err(Error::NotSemistable));
    }

    #[test]
    fn isomorphism_by_swap() {
        let (q, _, _) = preset();
        let m = preset_rep(&q, &[&[1, 0], &[0, 1], &[1, 1]]);
        let n = preset_rep(&q, &[&[0, 1], &[1, 0], &[1, 1]]);
        let mut b = Budget::standard();
        let witness = rep_isomorphic(&m, &n, &mut b).unwrap().unwrap();
        assert_eq!(n, m.transform(&witness).unwrap());
        assert!(rep_isomorphic(&m, &m, &mut b).unwrap().is_some());
    }

    #[test]
    fn non_isomorphic_dimension_vectors() {
        let q = Arc::new(linear_quiver(2));
        let s1 = crate::rep::simple::<F2>(&q, 0);
        let s2 = crate::rep::simple::<F2>(&q, 1);
        let mut b = Budget::standard();
        assert!(rep_isomorphic(&s1, &s2, &mut b).unwrap().is_none());
    }

    #[test]
    fn correspondence_on_a2() {
        let q = Arc::new(linear_quiver(2));
        let alpha = DimVector(vec![1, 1]);
        let theta = StabilityParam(vec![1, -1]);
        let mut b = Budget::standard();
        let report = verify_correspondence::<F2>(&q, &alpha, &theta, &mut b).unwrap();
        assert!(report.passed(), "failures: {:?}", report.failures);
        // the only semistable point is the isomorphism M_a = 1
        assert_eq!(report.semistable_points, 1);
        assert_eq!(report.stable_points, 1);
        assert_eq!(report.g_orbits_stable, 1);
        assert_eq!(report.phi_orbits_stable, 1);
        assert_eq!(report.psi_orbits_stable, 1);
    }

    #[test]
    fn equivariance_random_small() {
        let (q, alpha, theta) = preset();
        let mut b = Budget::standard();
        let report =
            verify_equivariance_random::<F2>(&q, &alpha, &theta, 25, 7, &mut b).unwrap();
        assert!(report.passed(), "failures: {:?}", report.failures);
        assert_eq!(report.checked, 25);
    }
}
