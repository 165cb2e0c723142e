//! Self-verification battery: runs every cross-check between the fast
//! algorithms and their brute-force counterparts on a single graph.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::bounds::{vanishing_condition, ConditionMode};
use crate::chimin::minimize_chi_shifted;
use crate::error::Result;
use crate::graph::{BlowUpSite, Cycle, ResolutionGraph};
use crate::lattice::{
    ccc_decompose, computation_sequence, enumerate_b, genus_invariants, is_chain_connected,
    minimal_model,
};
use crate::oracle::{
    box_cap, for_each_in_box, fundamental_minimality_counterexample, is_chain_connected_brute,
    minimal_model_by_enumeration, minimize_chi_box, rohr_box_counterexample,
};

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn outcome(name: &'static str, pass: bool, detail: impl Into<String>) -> CheckOutcome {
    CheckOutcome {
        name,
        pass,
        detail: detail.into(),
    }
}

fn capped_bound(natural: &[BigInt], cap: &BigInt) -> Vec<BigInt> {
    natural.iter().map(|b| b.clone().min(cap.clone())).collect()
}

/// Runs the full battery. `max_points` caps every enumeration box (number of
/// lattice points); quadratic sweeps use its square root so total work stays
/// within the budget.
pub fn run_battery(g: &ResolutionGraph, max_points: u64) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();

    let validation = g.validate();
    out.push(outcome(
        "graph_valid",
        validation.is_ok(),
        format!("{validation:?}"),
    ));
    if !validation.is_ok() {
        return Ok(out);
    }

    let all: Vec<usize> = (0..g.len()).collect();
    let inv = genus_invariants(g)?;
    let zf = inv.z_f.clone();
    let one = BigInt::one();
    let sqrt_points = (max_points as f64).sqrt() as u64 + 1;

    // Z_f is the componentwise minimum among anti-nef cycles with full support
    let cap = box_cap(g.len(), max_points);
    let natural: Vec<BigInt> = all.iter().map(|&i| zf.coeff(i) + &one).collect();
    let bound = capped_bound(&natural, &cap);
    let bad = fundamental_minimality_counterexample(g, &all, &bound)?;
    out.push(outcome(
        "fundamental_cycle_minimality",
        bad.is_none(),
        match &bad {
            Some(c) => format!("counterexample {}", c.display(g)),
            None => "no anti-nef cycle below Z_f in box".into(),
        },
    ));

    // constructive chain-connectedness agrees with the definition
    let cap = box_cap(g.len(), sqrt_points);
    let bound = capped_bound(&natural, &cap);
    let mut disagreements: Option<Cycle> = None;
    let mut swept: u64 = 0;
    for_each_in_box(g, &all, &bound, |d| {
        if d.is_positive() {
            swept += 1;
            if is_chain_connected(g, d)? != is_chain_connected_brute(g, d)? {
                disagreements = Some(d.clone());
                return Ok(false);
            }
        }
        Ok(true)
    })?;
    out.push(outcome(
        "chain_connected_equivalence",
        disagreements.is_none(),
        match &disagreements {
            Some(c) => format!("disagreement at {}", c.display(g)),
            None => format!("{swept} cycles checked"),
        },
    ));

    // decompositions re-sum and verify (ccc_decompose self-checks its
    // conditions); exercised on Z_f, 2 Z_f and Z_f plus the reduced cycle
    let mut ccc_ok = true;
    let mut ccc_detail = String::new();
    let samples = [
        zf.clone(),
        zf.scale(&BigInt::from(2)),
        zf.add(&g.reduced_cycle(&all)),
    ];
    for d in &samples {
        match ccc_decompose(g, d) {
            Ok(dec) => {
                if dec.sum(g) != *d {
                    ccc_ok = false;
                    ccc_detail = format!("decomposition of {} does not re-sum", d.display(g));
                    break;
                }
                if dec.used_fallback {
                    ccc_detail = format!("fallback used on {}", d.display(g));
                }
            }
            Err(e) => {
                ccc_ok = false;
                ccc_detail = e.to_string();
                break;
            }
        }
    }
    out.push(outcome("ccc_decomposition", ccc_ok, ccc_detail));

    // minimal model equals the enumerated minimum when defined
    if !g.euler_chi(&zf)?.is_positive() {
        let fast = minimal_model(g, &zf)?;
        let slow = minimal_model_by_enumeration(g, &zf)?;
        out.push(outcome(
            "minimal_model_enumeration",
            fast == slow,
            format!("mc(Z_f) = {}", fast.display(g)),
        ));
    } else {
        out.push(outcome(
            "minimal_model_enumeration",
            true,
            "skipped: chi(Z_f) > 0",
        ));
    }

    // branch-and-bound minimum matches box enumeration within its own
    // certified search bound (capped)
    let zero = g.zero_cycle();
    let min = minimize_chi_shifted(g, &all, &zero, false)?;
    let cap = box_cap(g.len(), max_points);
    let bound = capped_bound(&min.search_bound, &cap);
    let (box_value, box_witness) = minimize_chi_box(g, &all, &zero, false, &bound)?;
    let chimin_ok = min.value == box_value && min.witness == box_witness;
    out.push(outcome(
        "chi_minimizer_box_oracle",
        chimin_ok,
        format!(
            "min chi = {} at {} (box: {} at {})",
            min.value,
            min.witness.display(g),
            box_value,
            box_witness.display(g)
        ),
    ));

    // every computation sequence lands in B, and B respects p_a <= p_f
    let b = enumerate_b(g)?;
    let mut b_ok = true;
    let mut b_detail = format!("|B| = {}", b.len());
    'seq: for seed in 0..g.len() {
        for c in computation_sequence(g, seed)? {
            if !b.contains(&c) {
                b_ok = false;
                b_detail = format!("sequence element {} not in B", c.display(g));
                break 'seq;
            }
        }
    }
    if b_ok {
        for c in b.members() {
            if g.pa_cycle(c)? > inv.p_f {
                b_ok = false;
                b_detail = format!("p_a({}) > p_f", c.display(g));
                break;
            }
        }
    }
    out.push(outcome("chain_set_consistency", b_ok, b_detail));

    // p_f, p_a and chi of the pulled-back Z_f survive one blow-up at every site
    let mut sites: Vec<BlowUpSite> = g
        .vertices()
        .iter()
        .map(|v| BlowUpSite::Vertex(v.id.clone()))
        .collect();
    for (i, j, _) in g.edges() {
        sites.push(BlowUpSite::Edge(
            g.vertex(i).id.clone(),
            g.vertex(j).id.clone(),
        ));
    }
    let mut blow_ok = true;
    let mut blow_detail = format!("{} sites", sites.len());
    for site in sites {
        let up = g.blow_up(site)?;
        let up_inv = genus_invariants(&up.graph)?;
        let tt = up.total_transform(&zf)?;
        if up_inv.p_f != inv.p_f
            || up_inv.p_a != inv.p_a
            || up.graph.euler_chi(&tt)? != g.euler_chi(&zf)?
        {
            blow_ok = false;
            blow_detail = "invariants changed under blow-up".into();
            break;
        }
    }
    out.push(outcome("blow_up_invariance", blow_ok, blow_detail));

    // the exact condition for l = -Z_f must cover the whole effective box
    let l = zf.neg();
    let verdict = vanishing_condition(g, &l, ConditionMode::Exact)?;
    if verdict.holds {
        let bad = rohr_box_counterexample(g, &l, max_points)?;
        out.push(outcome(
            "exact_condition_box_cover",
            bad.is_none(),
            match &bad {
                Some(c) => format!("violating cycle {}", c.display(g)),
                None => "no violation in box".into(),
            },
        ));
    } else {
        out.push(outcome(
            "exact_condition_box_cover",
            true,
            "skipped: exact condition does not hold for -Z_f",
        ));
    }

    // remark2 => remark1 => exact for l = -Z_f
    let exact = verdict.holds;
    let r1 = vanishing_condition(g, &l, ConditionMode::Remark1)?.holds;
    let r2 = vanishing_condition(g, &l, ConditionMode::Remark2)?.holds;
    let mono = (!r2 || r1) && (!r1 || exact);
    out.push(outcome(
        "condition_mode_monotonicity",
        mono,
        format!("exact={exact} remark1={r1} remark2={r2}"),
    ));

    Ok(out)
}
