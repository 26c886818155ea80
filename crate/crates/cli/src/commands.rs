//! Implementations of the CLI subcommands. Each returns `Ok(())` or a
//! `Failure` carrying the process exit code.

use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use tfs_core::enumerate::{free_trees_shard, EnumError};
use tfs_core::families::{
    applicable_steps, apply_operation, gap_tree, generate_t_delta, recognize_f, recognize_h,
    recognize_t_delta, FamilyCertificate, FamilyError,
};
use tfs_core::graph::Graph;
use tfs_core::io::{self, ForcingCertificate, GraphRecord, IoError};
use tfs_core::solve::{forcing_number_with, total_forcing_number_with, SolveError};

use crate::config::RunConfig;
use crate::report::{SolveReport, SOLVE_SCHEMA};
use crate::sweeps::{run_sweep, Claim};

pub const EXIT_CLAIM_FAILED: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_TOO_LARGE: u8 = 3;
pub const EXIT_INVALID_PARAMS: u8 = 4;
pub const EXIT_NOT_MEMBER: u8 = 5;
pub const EXIT_NOT_A_TREE: u8 = 6;

pub struct Failure {
    pub code: u8,
    pub message: String,
}

pub fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Failure {
        fail(EXIT_PARSE, e.to_string())
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Failure {
        let code = match e {
            SolveError::TooLarge { .. } => EXIT_TOO_LARGE,
            SolveError::Graph(_) => EXIT_NOT_A_TREE,
            _ => EXIT_INVALID_PARAMS,
        };
        fail(code, e.to_string())
    }
}

impl From<FamilyError> for Failure {
    fn from(e: FamilyError) -> Failure {
        let code = match e {
            FamilyError::Graph(_) => EXIT_NOT_A_TREE,
            _ => EXIT_INVALID_PARAMS,
        };
        fail(code, e.to_string())
    }
}

impl From<EnumError> for Failure {
    fn from(e: EnumError) -> Failure {
        fail(EXIT_TOO_LARGE, e.to_string())
    }
}

fn read_graphs(path: &Path) -> Result<Vec<Graph>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| fail(EXIT_PARSE, format!("cannot read {}: {e}", path.display())))?;
    let graphs = io::parse_edge_list(&text)?;
    if graphs.is_empty() {
        return Err(fail(EXIT_PARSE, format!("{}: no graph records", path.display())));
    }
    Ok(graphs)
}

pub fn cmd_solve(
    file: &Path,
    want_f: bool,
    want_ft: bool,
    dot: bool,
    cfg: &RunConfig,
) -> Result<(), Failure> {
    let graphs = read_graphs(file)?;
    let (want_f, want_ft) = if want_f || want_ft {
        (want_f, want_ft)
    } else {
        (true, true)
    };
    let solver = cfg.full_solver();
    for g in &graphs {
        if dot {
            print!("{}", io::to_dot(g));
            continue;
        }
        let mut report = SolveReport {
            schema: SOLVE_SCHEMA,
            graph: GraphRecord::from_graph(g),
            f: None,
            ft: None,
            witness_f: None,
            witness_ft: None,
            certificate_f: None,
            certificate_ft: None,
        };
        if want_f {
            let r = forcing_number_with(g, &solver)?;
            report.f = Some(r.value);
            report.witness_f = Some(r.witness.to_vec());
            report.certificate_f = Some(ForcingCertificate::new(g, &r.witness, &r.certificate.sequence));
        }
        if want_ft {
            let r = total_forcing_number_with(g, &solver)?;
            report.ft = Some(r.value);
            report.witness_ft = Some(r.witness.to_vec());
            report.certificate_ft =
                Some(ForcingCertificate::new(g, &r.witness, &r.certificate.sequence));
        }
        println!("{}", serde_json::to_string(&report).expect("report serializes"));
    }
    Ok(())
}

pub fn cmd_verify(
    claim: &str,
    max_order: usize,
    threads: usize,
    json_path: Option<&Path>,
    counterexample_dir: Option<&Path>,
    inject_fault: bool,
    cfg: &RunConfig,
) -> Result<(), Failure> {
    let claim: Claim = claim
        .parse()
        .map_err(|e: String| fail(EXIT_INVALID_PARAMS, e))?;
    let report = run_sweep(claim, max_order, threads, cfg, inject_fault)
        .map_err(|e| fail(e.code, e.message))?;
    let body = serde_json::to_string_pretty(&report).expect("report serializes");
    match json_path {
        Some(path) => std::fs::write(path, &body)
            .map_err(|e| fail(EXIT_INVALID_PARAMS, format!("cannot write {}: {e}", path.display())))?,
        None => println!("{body}"),
    }
    eprint!("{}", report.human_summary());
    if report.holds() {
        return Ok(());
    }
    let dir = counterexample_dir
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("counterexamples"));
    std::fs::create_dir_all(&dir)
        .map_err(|e| fail(EXIT_INVALID_PARAMS, format!("cannot create {}: {e}", dir.display())))?;
    for c in report.claims.iter().filter(|c| !c.holds) {
        let path = dir.join(format!("{}.json", c.claim_id));
        let body = serde_json::to_string_pretty(&json!({
            "claim": c.claim_id,
            "counterexamples": c.counterexamples,
            "details": c.details,
        }))
        .expect("counterexamples serialize");
        std::fs::write(&path, body)
            .map_err(|e| fail(EXIT_INVALID_PARAMS, format!("cannot write {}: {e}", path.display())))?;
        eprintln!("counterexamples written to {}", path.display());
    }
    Err(fail(
        EXIT_CLAIM_FAILED,
        format!("claim {} does not hold", claim.name()),
    ))
}

pub struct GenerateParams {
    pub delta: Option<usize>,
    pub k: Option<usize>,
    pub plan: usize,
    pub n: Option<usize>,
    pub steps: usize,
    pub seed: u64,
    pub variant: Option<String>,
    pub legs: Option<String>,
    pub out: Option<PathBuf>,
}

fn require(value: Option<usize>, what: &str) -> Result<usize, Failure> {
    value.ok_or_else(|| fail(EXIT_INVALID_PARAMS, format!("missing required parameter {what}")))
}

pub fn cmd_generate(family: &str, params: &GenerateParams) -> Result<(), Failure> {
    let to_text = |cert: FamilyCertificate| {
        serde_json::to_string_pretty(&cert).expect("certificate serializes")
    };
    let (graph, certificate): (Graph, String) = match family.to_lowercase().as_str() {
        "tdelta" | "t-delta" => {
            let delta = require(params.delta, "--delta")?;
            let k = require(params.k, "--k")?;
            let (g, partition) = generate_t_delta(delta, k, params.plan)?;
            let cert = to_text(FamilyCertificate::StarPartition(partition));
            (g, cert)
        }
        "f" => {
            let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
            let mut g = Graph::path(2);
            let mut steps = Vec::with_capacity(params.steps);
            for _ in 0..params.steps {
                let choices = applicable_steps(&g);
                let step = choices[rng.gen_range(0..choices.len())];
                g = apply_operation(&g, &step).expect("listed steps satisfy preconditions");
                steps.push(step);
            }
            let cert = to_text(FamilyCertificate::Operations(steps));
            (g, cert)
        }
        "h" => {
            let g = match params.variant.as_deref().unwrap_or("path") {
                "path" => {
                    let n = params.n.unwrap_or(8);
                    if n < 2 {
                        return Err(fail(EXIT_INVALID_PARAMS, "a path needs order >= 2"));
                    }
                    Graph::path(n)
                }
                "spider" => {
                    let legs = params
                        .legs
                        .as_deref()
                        .ok_or_else(|| fail(EXIT_INVALID_PARAMS, "spider needs --legs, e.g. --legs 1,2,4"))?;
                    let lengths: Vec<usize> = legs
                        .split(',')
                        .map(|tok| tok.trim().parse::<usize>())
                        .collect::<Result<_, _>>()
                        .map_err(|_| fail(EXIT_INVALID_PARAMS, "legs must be comma-separated lengths"))?;
                    if lengths.len() < 3 || lengths.contains(&0) {
                        return Err(fail(
                            EXIT_INVALID_PARAMS,
                            "a spider needs at least three legs of positive length",
                        ));
                    }
                    Graph::spider(&lengths)
                }
                other => {
                    return Err(fail(EXIT_INVALID_PARAMS, format!("unknown variant `{other}`")));
                }
            };
            let tag = recognize_h(&g)?.expect("paths and spiders are members");
            (g, to_text(FamilyCertificate::PathOrSpider(tag)))
        }
        "gap" => {
            let k = require(params.k, "--k")?;
            let g = gap_tree(k)?;
            let cert = serde_json::to_string_pretty(&json!({
                "family": "gap", "k": k, "order": 3 * k,
            }))
            .expect("certificate serializes");
            (g, cert)
        }
        other => {
            return Err(fail(
                EXIT_INVALID_PARAMS,
                format!("unknown family `{other}` (expected Tdelta|F|H|gap)"),
            ));
        }
    };
    let edges = io::write_edge_list_record(&graph);
    let cert_text = certificate;
    match &params.out {
        Some(dir) => {
            std::fs::create_dir_all(dir)
                .map_err(|e| fail(EXIT_INVALID_PARAMS, format!("cannot create {}: {e}", dir.display())))?;
            let base = family.to_lowercase();
            std::fs::write(dir.join(format!("{base}.edges")), &edges)
                .map_err(|e| fail(EXIT_INVALID_PARAMS, e.to_string()))?;
            std::fs::write(dir.join(format!("{base}.cert.json")), &cert_text)
                .map_err(|e| fail(EXIT_INVALID_PARAMS, e.to_string()))?;
            eprintln!("wrote {base}.edges and {base}.cert.json to {}", dir.display());
        }
        None => {
            print!("{edges}");
            println!("{cert_text}");
        }
    }
    Ok(())
}

pub fn cmd_recognize(family: &str, file: &Path) -> Result<(), Failure> {
    let graphs = read_graphs(file)?;
    let g = &graphs[0];
    if !g.is_tree() || g.order() < 2 {
        return Err(fail(EXIT_NOT_A_TREE, "input graph is not a non-trivial tree"));
    }
    let certificate = match family.to_lowercase().as_str() {
        "tdelta" | "t-delta" => recognize_t_delta(g)?.map(FamilyCertificate::StarPartition),
        "f" => recognize_f(g)?.map(FamilyCertificate::Operations),
        "h" => recognize_h(g)?.map(FamilyCertificate::PathOrSpider),
        other => {
            return Err(fail(
                EXIT_INVALID_PARAMS,
                format!("unknown family `{other}` (expected Tdelta|F|H)"),
            ));
        }
    };
    match certificate {
        Some(cert) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&cert).expect("certificate serializes")
            );
            Ok(())
        }
        None => Err(fail(EXIT_NOT_MEMBER, "not a member")),
    }
}

pub fn cmd_enum(n: usize, shard: Option<&str>, format: &str, cfg: &RunConfig) -> Result<(), Failure> {
    if n > cfg.enum_limit {
        return Err(fail(
            EXIT_TOO_LARGE,
            format!("order {n} exceeds the enumeration limit {}", cfg.enum_limit),
        ));
    }
    let (index, count) = match shard {
        None => (0, 1),
        Some(text) => {
            let parts: Vec<&str> = text.split('/').collect();
            let parsed = if parts.len() == 2 {
                parts[0].parse::<usize>().ok().zip(parts[1].parse::<usize>().ok())
            } else {
                None
            };
            parsed.ok_or_else(|| fail(EXIT_INVALID_PARAMS, "shard must look like i/s, e.g. 0/4"))?
        }
    };
    let trees =
        free_trees_shard(n, index, count).map_err(|e| fail(EXIT_INVALID_PARAMS, e.to_string()))?;
    let mut stdout = String::new();
    for t in trees {
        match format {
            "parent" => {
                stdout.push_str(&io::write_parent_array(&t).expect("enumerator yields trees"));
                stdout.push('\n');
            }
            "edges" => {
                stdout.push_str(&io::write_edge_list_record(&t));
                stdout.push('\n');
            }
            "dot" => stdout.push_str(&io::to_dot(&t)),
            other => return Err(fail(EXIT_INVALID_PARAMS, format!("unknown format `{other}`"))),
        }
    }
    print!("{stdout}");
    Ok(())
}
