//! Exhaustive claim sweeps over all free trees up to a given order.
//!
//! Each sweep runs the relevant solvers with the leaf-count lower bound
//! disabled, records bound violations and equality-characterization
//! mismatches, and aggregates per-shard tallies deterministically: the
//! same claims and counterexample sets come out whatever the thread
//! count.

use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use tfs_core::canon::canonical_code;
use tfs_core::enumerate::free_trees_shard;
use tfs_core::families::{gap_tree, recognize_f, recognize_h, recognize_t_delta};
use tfs_core::graph::Graph;
use tfs_core::io::{write_parent_array, ForcingCertificate};
use tfs_core::solve::{
    all_minimum_tf_sets_with, forcing_number_with, total_forcing_number_with, SolveResult,
    SolverConfig,
};

use crate::config::RunConfig;
use crate::report::{ClaimResult, SweepReport, REPORT_SCHEMA};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    Thm0,
    Thm1,
    Thm2,
    Thm3,
    LemSubdiv,
    LemTrim,
    Obs2,
    Gap,
}

impl FromStr for Claim {
    type Err = String;

    fn from_str(s: &str) -> Result<Claim, String> {
        match s {
            "thm0" => Ok(Claim::Thm0),
            "thm1" => Ok(Claim::Thm1),
            "thm2" => Ok(Claim::Thm2),
            "thm3" => Ok(Claim::Thm3),
            "lem-subdiv" => Ok(Claim::LemSubdiv),
            "lem-trim" => Ok(Claim::LemTrim),
            "obs2" => Ok(Claim::Obs2),
            "gap" => Ok(Claim::Gap),
            other => Err(format!(
                "unknown claim `{other}` (expected thm0|thm1|thm2|thm3|lem-subdiv|lem-trim|obs2|gap)"
            )),
        }
    }
}

impl Claim {
    pub fn name(&self) -> &'static str {
        match self {
            Claim::Thm0 => "thm0",
            Claim::Thm1 => "thm1",
            Claim::Thm2 => "thm2",
            Claim::Thm3 => "thm3",
            Claim::LemSubdiv => "lem-subdiv",
            Claim::LemTrim => "lem-trim",
            Claim::Obs2 => "obs2",
            Claim::Gap => "gap",
        }
    }

    fn sub_claims(&self) -> Vec<&'static str> {
        match self {
            Claim::Thm0 => vec!["thm0-bound", "thm0-equality", "thm0-chain"],
            Claim::Thm1 => vec!["thm1-bound", "thm1-equality"],
            Claim::Thm2 => vec!["thm2-bound", "thm2-equality"],
            Claim::Thm3 => vec!["thm3-bound", "thm3-equality", "thm3-forcing-leaf-bound"],
            Claim::LemSubdiv => vec!["lem-subdiv-ft", "lem-subdiv-f"],
            Claim::LemTrim => vec!["lem-trim-ft", "lem-trim-f", "lem-trim-leaves"],
            Claim::Obs2 => vec!["obs2-strong-supports", "obs2-leaf-neighbors"],
            Claim::Gap => vec!["gap-ft", "gap-f"],
        }
    }

    fn order_range(&self, max_order: usize) -> (usize, usize) {
        match self {
            Claim::Thm0 | Claim::Thm1 => (3, max_order),
            Claim::Gap => (1, max_order),
            _ => (2, max_order),
        }
    }
}

pub struct SweepError {
    pub code: u8,
    pub message: String,
}

fn too_large(message: String) -> SweepError {
    SweepError { code: 3, message }
}

/// Outcome of one sub-claim on one tree.
struct SubOutcome {
    equality: bool,
    violation: Option<Value>,
}

impl SubOutcome {
    fn ok(equality: bool) -> SubOutcome {
        SubOutcome {
            equality,
            violation: None,
        }
    }

    fn fail(detail: Value) -> SubOutcome {
        SubOutcome {
            equality: false,
            violation: Some(detail),
        }
    }
}

#[derive(Default)]
struct Tally {
    equality: usize,
    counterexamples: Vec<(String, Value)>,
}

pub fn run_sweep(
    claim: Claim,
    max_order: usize,
    threads: usize,
    cfg: &RunConfig,
    inject_fault: bool,
) -> Result<SweepReport, SweepError> {
    let started = Instant::now();
    let threads = threads.max(1);
    let solver = cfg.sweep_solver();
    validate_bounds(claim, max_order, cfg)?;
    let (lo, hi) = claim.order_range(max_order);
    let subs = claim.sub_claims();

    let mut tallies: Vec<Tally> = subs.iter().map(|_| Tally::default()).collect();
    let mut trees_checked = 0usize;

    if claim == Claim::Gap {
        for k in lo..=hi {
            trees_checked += 1;
            let t = gap_tree(k).expect("k >= 1");
            merge_outcomes(&mut tallies, &t, check_gap(&t, k, &solver, inject_fault));
        }
    } else {
        for n in lo..=hi {
            let shard_results: Vec<(usize, Vec<Tally>)> = std::thread::scope(|scope| {
                let handles: Vec<_> = (0..threads)
                    .map(|index| {
                        let solver = &solver;
                        let subs_len = subs.len();
                        scope.spawn(move || {
                            let mut local: Vec<Tally> =
                                (0..subs_len).map(|_| Tally::default()).collect();
                            let mut count = 0usize;
                            for t in free_trees_shard(n, index, threads)
                                .expect("bounds were validated")
                            {
                                count += 1;
                                let outcomes = check_tree(claim, &t, solver, inject_fault);
                                merge_outcomes(&mut local, &t, outcomes);
                            }
                            (count, local)
                        })
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().unwrap()).collect()
            });
            for (count, local) in shard_results {
                trees_checked += count;
                for (into, from) in tallies.iter_mut().zip(local) {
                    into.equality += from.equality;
                    into.counterexamples.extend(from.counterexamples);
                }
            }
        }
    }

    let claims = subs
        .iter()
        .zip(tallies)
        .map(|(id, mut tally)| {
            tally
                .counterexamples
                .sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.to_string().cmp(&b.1.to_string())));
            let (counterexamples, details): (Vec<String>, Vec<Value>) =
                tally.counterexamples.into_iter().unzip();
            ClaimResult {
                claim_id: id.to_string(),
                holds: counterexamples.is_empty(),
                equality_cases: tally.equality,
                counterexamples,
                details,
            }
        })
        .collect();

    Ok(SweepReport {
        schema: REPORT_SCHEMA,
        claim: claim.name().to_string(),
        order_range: (lo, hi),
        trees_checked,
        claims,
        config: cfg.echo(threads, max_order),
        elapsed_ms: started.elapsed().as_millis(),
    })
}

fn validate_bounds(claim: Claim, max_order: usize, cfg: &RunConfig) -> Result<(), SweepError> {
    let need_enum = claim != Claim::Gap;
    if need_enum && max_order > cfg.enum_limit {
        return Err(too_large(format!(
            "max order {max_order} exceeds the enumeration limit {}",
            cfg.enum_limit
        )));
    }
    let max_solved = match claim {
        Claim::Gap => 3 * max_order,
        Claim::LemSubdiv => max_order + 3,
        _ => max_order,
    };
    if max_solved > cfg.total_limit {
        return Err(too_large(format!(
            "the sweep would solve graphs of order {max_solved}, above the total forcing limit {}",
            cfg.total_limit
        )));
    }
    let needs_forcing = matches!(
        claim,
        Claim::Thm3 | Claim::LemSubdiv | Claim::LemTrim | Claim::Gap
    );
    if needs_forcing && max_solved > cfg.forcing_limit {
        return Err(too_large(format!(
            "the sweep would solve graphs of order {max_solved}, above the forcing limit {}",
            cfg.forcing_limit
        )));
    }
    if claim == Claim::Obs2 && max_order > cfg.exhaustive_limit {
        return Err(too_large(format!(
            "obs2 enumerates all minimum TF-sets; max order {max_order} exceeds the exhaustive limit {}",
            cfg.exhaustive_limit
        )));
    }
    Ok(())
}

fn merge_outcomes(tallies: &mut [Tally], t: &Graph, outcomes: Vec<SubOutcome>) {
    let parents = write_parent_array(t).expect("sweeps iterate trees");
    for (tally, outcome) in tallies.iter_mut().zip(outcomes) {
        if outcome.equality {
            tally.equality += 1;
        }
        if let Some(detail) = outcome.violation {
            tally.counterexamples.push((parents.clone(), detail));
        }
    }
}

fn solve_ft(t: &Graph, solver: &SolverConfig, fault: bool) -> (usize, SolveResult) {
    let r = total_forcing_number_with(t, solver).expect("bounds were validated");
    let value = r.value + usize::from(fault);
    (value, r)
}

fn witness_json(t: &Graph, r: &SolveResult) -> Value {
    json!({
        "witness": r.witness.to_vec(),
        "certificate": ForcingCertificate::new(t, &r.witness, &r.certificate.sequence),
    })
}

fn check_tree(claim: Claim, t: &Graph, solver: &SolverConfig, fault: bool) -> Vec<SubOutcome> {
    match claim {
        Claim::Thm0 => check_thm0(t, solver, fault),
        Claim::Thm1 => check_thm1(t, solver, fault),
        Claim::Thm2 => check_thm2(t, solver, fault),
        Claim::Thm3 => check_thm3(t, solver, fault),
        Claim::LemSubdiv => check_lem_subdiv(t, solver, fault),
        Claim::LemTrim => check_lem_trim(t, solver, fault),
        Claim::Obs2 => check_obs2(t, solver),
        Claim::Gap => unreachable!("gap is handled without tree enumeration"),
    }
}

fn check_thm1(t: &Graph, solver: &SolverConfig, fault: bool) -> Vec<SubOutcome> {
    let n = t.order();
    let delta = t.stats().max_degree;
    let (ft, r) = solve_ft(t, solver, fault);
    let context = |extra: &str| {
        json!({
            "n": n, "delta": delta, "ft": ft, "bound": format!("((delta-1)n+1)/delta"),
            "note": extra, "solver": witness_json(t, &r),
        })
    };
    let bound = if delta * ft <= (delta - 1) * n + 1 {
        SubOutcome::ok(false)
    } else {
        SubOutcome::fail(context("upper bound violated"))
    };
    let attained = delta * ft == (delta - 1) * n + 1;
    let member = recognize_t_delta(t).expect("sweeps iterate trees").is_some();
    let equality = if attained == member {
        SubOutcome::ok(attained)
    } else {
        SubOutcome::fail(context(if attained {
            "bound attained but the star-partition recognizer rejects"
        } else {
            "recognizer accepts but the bound is strict"
        }))
    };
    vec![bound, equality]
}

fn check_thm0(t: &Graph, solver: &SolverConfig, fault: bool) -> Vec<SubOutcome> {
    let n = t.order();
    let delta = t.stats().max_degree;
    let (ft, r) = solve_ft(t, solver, fault);
    let context = |extra: &str| {
        json!({
            "n": n, "delta": delta, "ft": ft, "bound": "delta*n/(delta+1)",
            "note": extra, "solver": witness_json(t, &r),
        })
    };
    let bound = if (delta + 1) * ft <= delta * n {
        SubOutcome::ok(false)
    } else {
        SubOutcome::fail(context("upper bound violated"))
    };
    let attained = (delta + 1) * ft == delta * n;
    let equality = if attained == t.is_star() {
        SubOutcome::ok(attained)
    } else {
        SubOutcome::fail(context("equality must hold exactly for stars"))
    };
    // The finer bound is below the coarse one, meeting it only at n = delta+1.
    let chain_lhs = (delta + 1) * ((delta - 1) * n + 1);
    let chain_rhs = delta * delta * n;
    let chain = if chain_lhs <= chain_rhs && ((chain_lhs == chain_rhs) == (n == delta + 1)) {
        SubOutcome::ok(n == delta + 1)
    } else {
        SubOutcome::fail(context("bound chain inequality failed"))
    };
    vec![bound, equality, chain]
}

fn check_thm2(t: &Graph, solver: &SolverConfig, fault: bool) -> Vec<SubOutcome> {
    let leaves = t.stats().leaf_count;
    let (ft, r) = solve_ft(t, solver, fault);
    let context = |extra: &str| {
        json!({
            "n": t.order(), "leaves": leaves, "ft": ft,
            "note": extra, "solver": witness_json(t, &r),
        })
    };
    let bound = if leaves <= ft {
        SubOutcome::ok(false)
    } else {
        SubOutcome::fail(context("leaf lower bound violated"))
    };
    let attained = leaves == ft;
    let member = recognize_f(t).expect("sweeps iterate trees").is_some();
    let equality = if attained == member {
        SubOutcome::ok(attained)
    } else {
        SubOutcome::fail(context(if attained {
            "leaf count attained but the operation recognizer rejects"
        } else {
            "operation recognizer accepts but the bound is strict"
        }))
    };
    vec![bound, equality]
}

fn check_thm3(t: &Graph, solver: &SolverConfig, fault: bool) -> Vec<SubOutcome> {
    let leaves = t.stats().leaf_count;
    let (ft, rt) = solve_ft(t, solver, fault);
    let rf = forcing_number_with(t, solver).expect("bounds were validated");
    let f = rf.value;
    let context = |extra: &str| {
        json!({
            "n": t.order(), "leaves": leaves, "ft": ft, "f": f,
            "note": extra,
            "solverFt": witness_json(t, &rt),
            "solverF": witness_json(t, &rf),
        })
    };
    let bound = if f < ft {
        SubOutcome::ok(false)
    } else {
        SubOutcome::fail(context("strict gap between F and F_t violated"))
    };
    let attained = f + 1 == ft;
    let member = recognize_h(t).expect("sweeps iterate trees").is_some();
    let equality = if attained == member {
        SubOutcome::ok(attained)
    } else {
        SubOutcome::fail(context("path/spider characterization mismatch"))
    };
    let leaf_bound = if f < leaves {
        SubOutcome::ok(f == leaves - 1)
    } else {
        SubOutcome::fail(context("forcing number exceeds leaves - 1"))
    };
    vec![bound, equality, leaf_bound]
}

fn seed_from_code(t: &Graph) -> [u8; 32] {
    let mut seed = [0u8; 32];
    for (i, &b) in canonical_code(t).unwrap().as_bytes().iter().enumerate() {
        seed[i % 32] = seed[i % 32]
            .wrapping_mul(31)
            .wrapping_add(b)
            .wrapping_add(i as u8);
    }
    seed
}

fn check_lem_subdiv(t: &Graph, solver: &SolverConfig, fault: bool) -> Vec<SubOutcome> {
    let (ft, _) = solve_ft(t, solver, false);
    let f = forcing_number_with(t, solver).expect("bounds were validated").value;
    let mut rng = ChaCha8Rng::from_seed(seed_from_code(t));
    let mut ft_out = SubOutcome::ok(true);
    let mut f_out = SubOutcome::ok(true);
    for round in 0..3 {
        let eligible: Vec<(usize, usize)> = t
            .edges()
            .filter(|&(u, v)| t.degree(u).min(t.degree(v)) <= 2)
            .collect();
        let e = eligible[rng.gen_range(0..eligible.len())];
        let times = rng.gen_range(1..=3);
        let s = t.subdivide_edge(e, times).expect("edge listed above");
        let ft_s = solve_ft(&s, solver, fault).0;
        let f_s = forcing_number_with(&s, solver).expect("bounds were validated").value
            + usize::from(fault);
        if ft_s != ft && ft_out.violation.is_none() {
            ft_out = SubOutcome::fail(json!({
                "round": round, "edge": e, "times": times, "ft": ft, "ftSubdivided": ft_s,
            }));
        }
        if f_s != f && f_out.violation.is_none() {
            f_out = SubOutcome::fail(json!({
                "round": round, "edge": e, "times": times, "f": f, "fSubdivided": f_s,
            }));
        }
    }
    vec![ft_out, f_out]
}

fn check_lem_trim(t: &Graph, solver: &SolverConfig, fault: bool) -> Vec<SubOutcome> {
    let (ft, _) = solve_ft(t, solver, false);
    let f = forcing_number_with(t, solver).expect("bounds were validated").value;
    let leaves = t.stats().leaf_count;
    let trimmed = t.trim().expect("sweeps iterate non-trivial trees");
    let ft_trim = solve_ft(&trimmed, solver, fault).0;
    let f_trim = forcing_number_with(&trimmed, solver)
        .expect("trim does not grow the order")
        .value
        + usize::from(fault);
    let leaves_trim = trimmed.stats().leaf_count;
    let detail = |name: &str, before: usize, after: usize| {
        json!({ "invariant": name, "original": before, "trimmed": after })
    };
    vec![
        if ft_trim == ft {
            SubOutcome::ok(true)
        } else {
            SubOutcome::fail(detail("ft", ft, ft_trim))
        },
        if f_trim == f {
            SubOutcome::ok(true)
        } else {
            SubOutcome::fail(detail("f", f, f_trim))
        },
        if leaves_trim == leaves {
            SubOutcome::ok(true)
        } else {
            SubOutcome::fail(detail("leaves", leaves, leaves_trim))
        },
    ]
}

fn check_obs2(t: &Graph, solver: &SolverConfig) -> Vec<SubOutcome> {
    let stats = t.stats();
    let sets = all_minimum_tf_sets_with(t, solver).expect("bounds were validated");
    let mut support_violation: Option<Value> = None;
    let mut leaf_violation: Option<Value> = None;
    for s in &sets {
        for v in stats.strong_supports.iter() {
            if !s.contains(v) && support_violation.is_none() {
                support_violation = Some(json!({
                    "set": s.to_vec(), "missingStrongSupport": v,
                }));
            }
            let leaf_nbrs: Vec<usize> = t
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&u| stats.leaves.contains(u))
                .collect();
            let present = leaf_nbrs.iter().filter(|&&u| s.contains(u)).count();
            if present + 1 < leaf_nbrs.len() && leaf_violation.is_none() {
                leaf_violation = Some(json!({
                    "set": s.to_vec(), "strongSupport": v,
                    "leafNeighbors": leaf_nbrs, "present": present,
                }));
            }
        }
    }
    // The equality statistic counts trees whose minimum TF-sets were examined.
    let examined = !sets.is_empty();
    let build = |violation: Option<Value>| match violation {
        None => SubOutcome::ok(examined),
        Some(detail) => SubOutcome::fail(detail),
    };
    vec![build(support_violation), build(leaf_violation)]
}

fn check_gap(t: &Graph, k: usize, solver: &SolverConfig, fault: bool) -> Vec<SubOutcome> {
    let (ft, rt) = solve_ft(t, solver, fault);
    let rf = forcing_number_with(t, solver).expect("bounds were validated");
    let f = rf.value + usize::from(fault);
    vec![
        if ft == 2 * k {
            SubOutcome::ok(true)
        } else {
            SubOutcome::fail(json!({
                "k": k, "expectedFt": 2 * k, "ft": ft, "solver": witness_json(t, &rt),
            }))
        },
        if f == k {
            SubOutcome::ok(true)
        } else {
            SubOutcome::fail(json!({
                "k": k, "expectedF": k, "f": f, "solver": witness_json(t, &rf),
            }))
        },
    ]
}
