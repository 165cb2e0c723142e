//! Named vanishing conditions and the upper bounds for the normal reduction
//! number: the four condition modes, exact lambda, almost-cone profiles,
//! elliptic sequences, the connecting cycle, the Zariski-type formula, and
//! the consolidated bound report.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::chimin::minimize_chi_shifted;
use crate::error::{Error, Result};
use crate::graph::{Cycle, ResolutionGraph};
use crate::lattice::{enumerate_b, fundamental_cycle, genus_invariants, minimal_model};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionMode {
    /// l.C > -2 chi(C) for all chain-connected C
    Rohr,
    /// the sharp condition over all extensions of B(L) by orthogonal parts
    Exact,
    /// l.C > -2 (chi(C) + chi_L) for all C in B(L)
    Remark1,
    /// l.C > -2 (chi(Z_f) + chi_L) for all C in B(L)
    Remark2,
}

impl ConditionMode {
    pub fn name(self) -> &'static str {
        match self {
            ConditionMode::Rohr => "rohr",
            ConditionMode::Exact => "exact",
            ConditionMode::Remark1 => "remark1",
            ConditionMode::Remark2 => "remark2",
        }
    }

    pub fn from_name(s: &str) -> Option<ConditionMode> {
        match s {
            "rohr" => Some(ConditionMode::Rohr),
            "exact" => Some(ConditionMode::Exact),
            "remark1" => Some(ConditionMode::Remark1),
            "remark2" => Some(ConditionMode::Remark2),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ConditionVerdict {
    pub mode: ConditionMode,
    pub holds: bool,
    /// a cycle violating the mode's inequality, present iff holds is false
    pub witness: Option<Cycle>,
    /// minimum over checked cycles of l.C + (the mode's 2 chi term);
    /// the condition holds iff this is positive
    pub margin: BigInt,
}

fn check_not_trivial(g: &ResolutionGraph, l: &Cycle) -> Result<()> {
    let p = g.pairings(l)?;
    if p.iter().all(|x| x.is_zero()) {
        return Err(Error::Precondition("numerically trivial cycle".into()));
    }
    Ok(())
}

/// Members of B with nonzero pairing against l.
pub fn restricted_b(g: &ResolutionGraph, l: &Cycle) -> Result<Vec<Cycle>> {
    check_not_trivial(g, l)?;
    let b = enumerate_b(g)?;
    let mut out = Vec::new();
    for c in b.members() {
        if !g.intersection_number(l, c)?.is_zero() {
            out.push(c.clone());
        }
    }
    Ok(out)
}

/// chi_L clamped to be nonpositive. The clamp keeps the two coarser modes
/// sound (they must imply the exact mode): the exact inner minimum always
/// admits C2 = 0, so the effective shift can never exceed 0.
fn chi_l_clamped(g: &ResolutionGraph, l: &Cycle) -> Result<BigInt> {
    let perp = g.orthogonal_set(l)?;
    if perp.is_empty() {
        return Ok(BigInt::zero());
    }
    let zero = g.zero_cycle();
    let m = minimize_chi_shifted(g, &perp, &zero, false)?;
    Ok(m.value.min(BigInt::zero()))
}

/// Sharp inner minimum for a first part c1: min chi(c1 + C2) over C2 >= 0
/// supported where l is orthogonal and c1 is anti-nef, including C2 = 0.
/// Returns (minimum, minimizing C2).
fn extension_minimum(g: &ResolutionGraph, l: &Cycle, c1: &Cycle) -> Result<(BigInt, Cycle)> {
    let perp = g.orthogonal_set(l)?;
    let p1 = g.pairings(c1)?;
    let s: Vec<usize> = perp
        .into_iter()
        .filter(|&i| !p1[i].is_positive())
        .collect();
    let m = minimize_chi_shifted(g, &s, c1, true)?;
    Ok((g.euler_chi(c1)? + m.value, m.witness))
}

/// Decides the chosen vanishing condition for l exactly.
pub fn vanishing_condition(
    g: &ResolutionGraph,
    l: &Cycle,
    mode: ConditionMode,
) -> Result<ConditionVerdict> {
    check_not_trivial(g, l)?;
    let two = BigInt::from(2);
    // (margin contribution, cycle realizing it) per checked case
    let mut cases: Vec<(BigInt, Cycle)> = Vec::new();
    match mode {
        ConditionMode::Rohr => {
            for c in enumerate_b(g)?.members() {
                let m = g.intersection_number(l, c)? + &two * g.euler_chi(c)?;
                cases.push((m, c.clone()));
            }
        }
        ConditionMode::Exact => {
            for c1 in restricted_b(g, l)? {
                let (min_chi, c2) = extension_minimum(g, l, &c1)?;
                let m = g.intersection_number(l, &c1)? + &two * min_chi;
                cases.push((m, c1.add(&c2)));
            }
        }
        ConditionMode::Remark1 | ConditionMode::Remark2 => {
            let chi_l = chi_l_clamped(g, l)?;
            let all: Vec<usize> = (0..g.len()).collect();
            let chi_zf = g.euler_chi(&fundamental_cycle(g, &all)?)?;
            for c in restricted_b(g, l)? {
                let term = match mode {
                    ConditionMode::Remark1 => g.euler_chi(&c)?,
                    _ => chi_zf.clone(),
                };
                let m = g.intersection_number(l, &c)? + &two * (term + &chi_l);
                cases.push((m, c));
            }
        }
    }
    let (margin, worst) = cases
        .into_iter()
        .min()
        .ok_or_else(|| Error::InvariantViolation("no cycles checked".into()))?;
    let holds = margin.is_positive();
    Ok(ConditionVerdict {
        mode,
        holds,
        witness: if holds { None } else { Some(worst) },
        margin,
    })
}

#[derive(Debug, Clone)]
pub struct LambdaValue {
    pub value: BigInt,
    /// (first part in B(Z), orthogonal extension) attaining the maximum
    pub witness: (Cycle, Cycle),
}

/// Exact lambda of the anti-nef cycle z on this resolution: the maximal
/// floor((2 p_a(D) - 2) / (-z.D)) over all extensions D of members of B(Z).
pub fn lambda_exact(g: &ResolutionGraph, z: &Cycle) -> Result<LambdaValue> {
    if !z.is_positive() {
        return Err(Error::Precondition("z must be positive".into()));
    }
    if !g.is_anti_nef(z)? {
        return Err(Error::Precondition("z must be anti-nef".into()));
    }
    let two = BigInt::from(2);
    let mut best: Option<(BigInt, (Cycle, Cycle))> = None;
    for c1 in restricted_b(g, z)? {
        let (min_chi, c2) = extension_minimum(g, z, &c1)?;
        // -z.D = -z.C1 is constant over the extensions of C1, so the
        // supremum over them is attained at the chi minimum
        let numerator = -(&two * min_chi);
        let denominator = -g.intersection_number(z, &c1)?;
        debug_assert!(denominator.is_positive());
        let candidate = numerator.div_floor(&denominator);
        match &best {
            Some((v, _)) if v >= &candidate => {}
            _ => best = Some((candidate, (c1, c2))),
        }
    }
    let (value, witness) =
        best.ok_or_else(|| Error::InvariantViolation("empty restricted set".into()))?;
    Ok(LambdaValue { value, witness })
}

#[derive(Debug, Clone)]
pub struct AlmostConeProfile {
    pub central: String,
    pub central_index: usize,
    /// genus of the central curve, equal to the fundamental genus
    pub genus_g: BigInt,
    /// -Z_f . C, positive
    pub degree_d: BigInt,
    /// max(2, degree)
    pub delta: BigInt,
}

#[derive(Debug, Clone)]
pub enum AlmostCone {
    Profile(AlmostConeProfile),
    Not { reason: String },
}

impl AlmostCone {
    pub fn profile(&self) -> Option<&AlmostConeProfile> {
        match self {
            AlmostCone::Profile(p) => Some(p),
            AlmostCone::Not { .. } => None,
        }
    }
}

/// Detects the almost-cone shape: p_f >= 1 and the minimal model of Z_f is a
/// single smooth vertex C of genus p_f with Z_f.C < 0.
pub fn almost_cone_profile(g: &ResolutionGraph) -> Result<AlmostCone> {
    let inv = genus_invariants(g)?;
    if inv.p_f < BigInt::one() {
        return Ok(AlmostCone::Not {
            reason: "fundamental genus is zero".into(),
        });
    }
    let mc = minimal_model(g, &inv.z_f)?;
    let supp = mc.support();
    let central_index = match supp.as_slice() {
        [i] if mc.coeff(*i).is_one() => *i,
        _ => {
            return Ok(AlmostCone::Not {
                reason: "minimal model of Z_f is not a single reduced vertex".into(),
            })
        }
    };
    let v = g.vertex(central_index);
    if !v.smooth {
        return Ok(AlmostCone::Not {
            reason: format!("central candidate {} is singular", v.id),
        });
    }
    if v.genus != inv.p_f {
        return Ok(AlmostCone::Not {
            reason: format!(
                "central candidate {} has genus {} != p_f = {}",
                v.id, v.genus, inv.p_f
            ),
        });
    }
    let zf_c = g.intersection_number(&inv.z_f, &g.unit_cycle(central_index))?;
    if !zf_c.is_negative() {
        return Ok(AlmostCone::Not {
            reason: format!("central candidate {} has Z_f.C = {}", v.id, zf_c),
        });
    }
    let degree_d = -zf_c;
    let delta = degree_d.clone().max(BigInt::from(2));
    Ok(AlmostCone::Profile(AlmostConeProfile {
        central: v.id.clone(),
        central_index,
        genus_g: inv.p_f,
        degree_d,
        delta,
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AcCase {
    ZcNegative,
    ZcZero,
    Global,
}

impl AcCase {
    pub fn name(self) -> &'static str {
        match self {
            AcCase::ZcNegative => "ZC_negative",
            AcCase::ZcZero => "ZC_zero",
            AcCase::Global => "global",
        }
    }
}

#[derive(Debug, Clone)]
pub struct AcBoundValue {
    pub bound: BigInt,
    pub case: AcCase,
}

/// Almost-cone bound. A lower bound for the gonality of the central curve
/// yields a sound upper bound for the normal reduction number.
pub fn ac_bound(
    g: &ResolutionGraph,
    z: Option<&Cycle>,
    gonality_lower: &BigInt,
) -> Result<AcBoundValue> {
    let profile = match almost_cone_profile(g)? {
        AlmostCone::Profile(p) => p,
        AlmostCone::Not { reason } => {
            return Err(Error::Precondition(format!("not an almost cone: {reason}")))
        }
    };
    if gonality_lower < &BigInt::from(2) {
        return Err(Error::Precondition(
            "gonality lower bound must be at least 2".into(),
        ));
    }
    let two = BigInt::from(2);
    let numer = &two * &profile.genus_g - &two;
    match z {
        Some(z) => {
            if !z.is_positive() || !g.is_anti_nef(z)? {
                return Err(Error::Precondition("z must be anti-nef positive".into()));
            }
            let zc = g.intersection_number(z, &g.unit_cycle(profile.central_index))?;
            if zc.is_positive() {
                return Err(Error::InvariantViolation(
                    "anti-nef z pairs positively with the central curve".into(),
                ));
            }
            if zc.is_negative() {
                Ok(AcBoundValue {
                    bound: numer.div_floor(gonality_lower) + &two,
                    case: AcCase::ZcNegative,
                })
            } else {
                Ok(AcBoundValue {
                    bound: numer.div_floor(&profile.delta) + &two,
                    case: AcCase::ZcZero,
                })
            }
        }
        None => {
            let denom = gonality_lower.min(&profile.delta);
            let bound = numer.div_floor(denom) + &two;
            if bound > &profile.genus_g + BigInt::one() {
                return Err(Error::InvariantViolation(
                    "global almost-cone bound exceeds g + 1".into(),
                ));
            }
            Ok(AcBoundValue {
                bound,
                case: AcCase::Global,
            })
        }
    }
}

/// Elliptic sequence of the subgraph s (default: whole graph): nested
/// fundamental cycles toward the minimally elliptic cycle, ending at the
/// first one pairing strictly negatively with it.
pub fn elliptic_sequence(g: &ResolutionGraph, s: Option<&[usize]>) -> Result<Vec<Cycle>> {
    let mut b: Vec<usize> = match s {
        Some(s) => {
            let mut v = s.to_vec();
            v.sort_unstable();
            v.dedup();
            v
        }
        None => (0..g.len()).collect(),
    };
    let z0 = fundamental_cycle(g, &b)?;
    let chi0 = g.euler_chi(&z0)?;
    if !chi0.is_zero() {
        return Err(Error::Precondition(format!(
            "chi(Z_B) = {chi0}, expected 0"
        )));
    }
    let c = minimal_model(g, &z0)?;
    let c_supp = c.support();
    let mut seq = vec![z0];
    loop {
        let z = seq.last().unwrap().clone();
        if !g.euler_chi(&z)?.is_zero() {
            return Err(Error::InvariantViolation(
                "elliptic sequence element has nonzero chi".into(),
            ));
        }
        if let [v] = c_supp.as_slice() {
            if !z.coeff(*v).is_one() {
                return Err(Error::InvariantViolation(
                    "elliptic sequence element is not reduced at the central curve".into(),
                ));
            }
        }
        let zc = g.intersection_number(&z, &c)?;
        if zc.is_negative() {
            return Ok(seq);
        }
        if zc.is_positive() {
            return Err(Error::InvariantViolation(
                "fundamental cycle pairs positively with the minimal model".into(),
            ));
        }
        let p = g.pairings(&z)?;
        let orth: Vec<usize> = b.iter().copied().filter(|&i| p[i].is_zero()).collect();
        let next_b = g
            .connected_components_of(&orth)
            .into_iter()
            .find(|comp| c_supp.iter().all(|v| comp.contains(v)))
            .ok_or_else(|| {
                Error::InvariantViolation(
                    "no orthogonal component contains the minimal model support".into(),
                )
            })?;
        if next_b.len() >= b.len() {
            return Err(Error::InvariantViolation(
                "elliptic sequence failed to shrink".into(),
            ));
        }
        b = next_b;
        seq.push(fundamental_cycle(g, &b)?);
    }
}

/// Connecting cycle W on the connected component b of the z-orthogonal
/// subgraph that contains the minimal model M of Z_f: W has support exactly
/// b, is anti-nef on b, reduced at every connecting component, and pairs
/// with M at most -2.
pub fn connecting_cycle_w(g: &ResolutionGraph, z: &Cycle, b: &[usize]) -> Result<Cycle> {
    if !z.is_positive() || !g.is_anti_nef(z)? {
        return Err(Error::Precondition("z must be anti-nef positive".into()));
    }
    let all: Vec<usize> = (0..g.len()).collect();
    let zf = fundamental_cycle(g, &all)?;
    let m = minimal_model(g, &zf)?;
    let m_supp = m.support();
    if !g.intersection_number(&zf, &m)?.is_negative() {
        return Err(Error::Precondition("Z_f.M must be negative".into()));
    }
    let no_m_components = |d: &Cycle| m_supp.iter().all(|&i| d.coeff(i).is_zero());
    if !no_m_components(&zf.sub(&m)) {
        return Err(Error::Precondition(
            "Z_f - M contains a component of M".into(),
        ));
    }
    let mut b_sorted = b.to_vec();
    b_sorted.sort_unstable();
    b_sorted.dedup();
    let valid = g
        .orthogonal_components(z)?
        .into_iter()
        .any(|comp| comp == b_sorted && m_supp.iter().all(|v| comp.contains(v)));
    if !valid {
        return Err(Error::Precondition(
            "B is not a connected component of the z-orthogonal subgraph containing supp(M)"
                .into(),
        ));
    }
    let z_b = fundamental_cycle(g, &b_sorted)?;
    if minimal_model(g, &z_b)? != m {
        return Err(Error::Precondition(
            "minimal model of Z_B differs from the minimal model of Z_f".into(),
        ));
    }
    if !no_m_components(&z_b.sub(&m)) {
        return Err(Error::Precondition(
            "Z_B - M contains a component of M".into(),
        ));
    }
    let minus_two = BigInt::from(-2);
    let zb_m = g.intersection_number(&z_b, &m)?;
    let w = if zb_m <= minus_two {
        z_b
    } else {
        // second case of the construction: add the fundamental cycle of the
        // component of (Z_B-orthogonal within b, together with supp M)
        // containing supp M
        let p = g.pairings(&z_b)?;
        let mut pool: Vec<usize> = b_sorted
            .iter()
            .copied()
            .filter(|&i| p[i].is_zero())
            .collect();
        pool.extend(m_supp.iter().copied());
        pool.sort_unstable();
        pool.dedup();
        let b_prime = g
            .connected_components_of(&pool)
            .into_iter()
            .find(|comp| m_supp.iter().all(|v| comp.contains(v)))
            .ok_or_else(|| {
                Error::InvariantViolation("no component contains supp(M)".into())
            })?;
        z_b.add(&fundamental_cycle(g, &b_prime)?)
    };
    // assert all four conclusions of the construction
    if w.support() != b_sorted {
        return Err(Error::InvariantViolation(
            "connecting cycle support differs from B".into(),
        ));
    }
    if !g.is_anti_nef_on(&w, &b_sorted)? {
        return Err(Error::InvariantViolation(
            "connecting cycle is not anti-nef on B".into(),
        ));
    }
    for &i in &b_sorted {
        let has_outside_neighbor = g.neighbors(i).iter().any(|j| !b_sorted.contains(j));
        if has_outside_neighbor && !w.coeff(i).is_one() {
            return Err(Error::InvariantViolation(
                "connecting cycle is not reduced at a connecting component".into(),
            ));
        }
    }
    if g.intersection_number(&w, &m)? > minus_two {
        return Err(Error::InvariantViolation(
            "connecting cycle pairs with M above -2".into(),
        ));
    }
    Ok(w)
}

/// floor((a - 1) b / a) for 2 <= a <= b.
pub fn zariski_formula(a: &BigInt, b: &BigInt) -> Result<BigInt> {
    if a < &BigInt::from(2) || b < a {
        return Err(Error::Precondition("requires 2 <= a <= b".into()));
    }
    Ok(((a - BigInt::one()) * b).div_floor(a))
}

#[derive(Debug, Clone)]
pub struct BoundItem {
    pub label: &'static str,
    pub value: BigInt,
    pub source: &'static str,
    pub witness: String,
}

#[derive(Debug, Clone)]
pub struct BoundReport {
    pub bounds: Vec<BoundItem>,
    pub best: BigInt,
}

/// Assembles every applicable upper bound for the normal reduction number.
/// z, when given, enables the lambda bound and the ideal-specific almost-cone
/// cases; pg is the externally supplied geometric genus.
pub fn br_bound_report(
    g: &ResolutionGraph,
    z: Option<&Cycle>,
    pg: Option<&BigInt>,
    gonality_lower: &BigInt,
) -> Result<BoundReport> {
    if let Some(z) = z {
        if !z.is_positive() || !g.is_anti_nef(z)? {
            return Err(Error::Precondition("z must be anti-nef positive".into()));
        }
    }
    if gonality_lower < &BigInt::from(2) {
        return Err(Error::Precondition(
            "gonality lower bound must be at least 2".into(),
        ));
    }
    let mut bounds = Vec::new();
    let inv = genus_invariants(g)?;
    bounds.push(BoundItem {
        label: "pa_plus_one",
        value: &inv.p_a + BigInt::one(),
        source: "arithmetic genus bound",
        witness: inv.pa_witness.display(g),
    });
    if let Some(z) = z {
        let lam = lambda_exact(g, z)?;
        let raw = &lam.value + BigInt::from(2);
        let clamped = raw.clone().max(BigInt::one());
        let mut witness = format!(
            "C1 = {}, C2 = {}",
            lam.witness.0.display(g),
            lam.witness.1.display(g)
        );
        if clamped != raw {
            // the reduction number is at least 1 by definition
            witness.push_str(&format!(" (raw value {raw} clamped to 1)"));
        }
        bounds.push(BoundItem {
            label: "lambda_plus_two",
            value: clamped,
            source: "lambda bound",
            witness,
        });
    }
    if let Some(pg) = pg {
        if pg.is_negative() {
            return Err(Error::Precondition(
                "geometric genus must be nonnegative".into(),
            ));
        }
        bounds.push(BoundItem {
            label: "pg_plus_one",
            value: pg + BigInt::one(),
            source: "geometric genus bound (externally supplied pg)",
            witness: format!("pg = {pg}"),
        });
    }
    if let AlmostCone::Profile(profile) = almost_cone_profile(g)? {
        let ac = ac_bound(g, z, gonality_lower)?;
        let label = match ac.case {
            AcCase::ZcNegative => "ac_gonality",
            AcCase::ZcZero => "ac_delta",
            AcCase::Global => {
                if gonality_lower <= &profile.delta {
                    "ac_gonality"
                } else {
                    "ac_delta"
                }
            }
        };
        bounds.push(BoundItem {
            label,
            value: ac.bound,
            source: "almost-cone bound",
            witness: format!(
                "central = {}, g = {}, d = {}, delta = {}, case = {}",
                profile.central, profile.genus_g, profile.degree_d, profile.delta,
                ac.case.name()
            ),
        });
    }
    for b in &bounds {
        if b.value < BigInt::one() {
            return Err(Error::InvariantViolation(format!(
                "bound {} is below 1",
                b.label
            )));
        }
    }
    let best = bounds.iter().map(|b| b.value.clone()).min().unwrap();
    Ok(BoundReport { bounds, best })
}
