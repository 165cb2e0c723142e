//! Definition-level brute-force counterparts of the fast algorithms.
//!
//! These are deliberately naive enumerations over explicit boxes. They exist
//! so that every optimized routine can be cross-checked on small inputs, both
//! in the test suite and by the `verify` command.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{Cycle, ResolutionGraph};
use crate::lattice::fundamental_cycle;

/// Iterates all integer vectors with 0 <= v_i <= bound_i on the given
/// coordinates (all other coordinates zero). Stops early when `f` returns
/// false.
pub fn for_each_in_box(
    g: &ResolutionGraph,
    coords: &[usize],
    bound: &[BigInt],
    mut f: impl FnMut(&Cycle) -> Result<bool>,
) -> Result<()> {
    assert_eq!(coords.len(), bound.len());
    let mut current = g.zero_cycle();
    let mut stack_go = true;
    recurse(g, coords, bound, 0, &mut current, &mut f, &mut stack_go)?;
    return Ok(());

    fn recurse(
        g: &ResolutionGraph,
        coords: &[usize],
        bound: &[BigInt],
        pos: usize,
        current: &mut Cycle,
        f: &mut impl FnMut(&Cycle) -> Result<bool>,
        go: &mut bool,
    ) -> Result<()> {
        if !*go {
            return Ok(());
        }
        if pos == coords.len() {
            *go = f(current)?;
            return Ok(());
        }
        let i = coords[pos];
        let mut v = BigInt::zero();
        while v <= bound[pos] && *go {
            current.set_coeff(i, v.clone());
            recurse(g, coords, bound, pos + 1, current, f, go)?;
            v += 1;
        }
        current.set_coeff(i, BigInt::zero());
        Ok(())
    }
}

/// Definition-level chain-connectedness: d is chain-connected iff there is no
/// D1 with 0 < D1 < d such that D1 is anti-nef on supp(d - D1).
pub fn is_chain_connected_brute(g: &ResolutionGraph, d: &Cycle) -> Result<bool> {
    if !d.is_positive() {
        return Err(Error::Precondition("cycle must be positive".into()));
    }
    let supp = d.support();
    let bound: Vec<BigInt> = supp.iter().map(|&i| d.coeff(i).clone()).collect();
    let mut connected = true;
    for_each_in_box(g, &supp, &bound, |d1| {
        if !d1.is_positive() || !d1.le(d) || d1 == d {
            return Ok(true);
        }
        let rest = d.sub(d1);
        if g.is_anti_nef_on(d1, &rest.support())? {
            connected = false;
            return Ok(false);
        }
        Ok(true)
    })?;
    Ok(connected)
}

/// Box-enumeration minimum of q(D) = chi(D) - a.D over 0 <= D <= bound
/// supported in s (D != 0 unless allow_zero). Returns (value, lex-lowest
/// witness). The caller supplies a bound known to contain the optimum.
pub fn minimize_chi_box(
    g: &ResolutionGraph,
    s: &[usize],
    a: &Cycle,
    allow_zero: bool,
    bound: &[BigInt],
) -> Result<(BigInt, Cycle)> {
    let mut best: Option<(BigInt, Cycle)> = None;
    for_each_in_box(g, s, bound, |d| {
        if d.is_zero() && !allow_zero {
            return Ok(true);
        }
        let q = g.euler_chi(d)? - g.intersection_number(a, d)?;
        match &best {
            Some((v, w)) if (&q, d) >= (v, w) => {}
            _ => best = Some((q, d.clone())),
        }
        Ok(true)
    })?;
    best.ok_or_else(|| Error::Precondition("empty search box".into()))
}

/// Fundamental-cycle minimality: every positive cycle supported in s that is
/// anti-nef on s and lies in the box dominates Z_f componentwise. Returns the
/// first counterexample if any.
pub fn fundamental_minimality_counterexample(
    g: &ResolutionGraph,
    s: &[usize],
    bound: &[BigInt],
) -> Result<Option<Cycle>> {
    let zf = fundamental_cycle(g, s)?;
    let mut bad: Option<Cycle> = None;
    for_each_in_box(g, s, bound, |d| {
        if !d.is_positive() || d.support() != s {
            return Ok(true);
        }
        if g.is_anti_nef_on(d, s)? && !zf.le(d) {
            bad = Some(d.clone());
            return Ok(false);
        }
        Ok(true)
    })?;
    Ok(bad)
}

/// min { C : 0 < C <= d, chi(C) = chi(d) } by full enumeration; errors when the
/// minimizers are not totally dominated by a single cycle.
pub fn minimal_model_by_enumeration(g: &ResolutionGraph, d: &Cycle) -> Result<Cycle> {
    let chi_d = g.euler_chi(d)?;
    let supp = d.support();
    let bound: Vec<BigInt> = supp.iter().map(|&i| d.coeff(i).clone()).collect();
    let mut minima: Vec<Cycle> = Vec::new();
    for_each_in_box(g, &supp, &bound, |c| {
        if c.is_positive() && g.euler_chi(c)? == chi_d {
            minima.retain(|m| !c.le(m) || m.le(c));
            if !minima.iter().any(|m| m.le(c)) {
                minima.push(c.clone());
            }
        }
        Ok(true)
    })?;
    match minima.as_slice() {
        [one] => Ok(one.clone()),
        _ => Err(Error::InvariantViolation(format!(
            "expected a unique minimal equal-chi subcycle, found {}",
            minima.len()
        ))),
    }
}

/// Per-coordinate cap so that the box over `n` coordinates has at most
/// `max_points` lattice points (each coordinate gets the same cap).
pub fn box_cap(n: usize, max_points: u64) -> BigInt {
    if n == 0 {
        return BigInt::zero();
    }
    let mut cap: u64 = 1;
    loop {
        let next = cap + 1;
        // (next+1)^n <= max_points?
        let mut prod: u128 = 1;
        let mut ok = true;
        for _ in 0..n {
            prod = prod.saturating_mul((next + 1) as u128);
            if prod > max_points as u128 {
                ok = false;
                break;
            }
        }
        if ok {
            cap = next;
        } else {
            break;
        }
    }
    BigInt::from(cap)
}

/// Searches the box 0 <= D <= cap (componentwise, all vertices) for a
/// positive cycle with l.D != 0 violating l.D > -2 chi(D). Returns the first
/// violator found, scanning in lexicographic order.
pub fn rohr_box_counterexample(
    g: &ResolutionGraph,
    l: &Cycle,
    max_points: u64,
) -> Result<Option<Cycle>> {
    let coords: Vec<usize> = (0..g.len()).collect();
    let cap = box_cap(g.len(), max_points);
    let bound: Vec<BigInt> = coords.iter().map(|_| cap.clone()).collect();
    let mut bad: Option<Cycle> = None;
    let two = BigInt::from(2);
    for_each_in_box(g, &coords, &bound, |d| {
        if !d.is_positive() {
            return Ok(true);
        }
        let ld = g.intersection_number(l, d)?;
        if ld.is_zero() {
            return Ok(true);
        }
        if ld <= -(&two * g.euler_chi(d)?) {
            bad = Some(d.clone());
            return Ok(false);
        }
        Ok(true)
    })?;
    Ok(bad)
}
