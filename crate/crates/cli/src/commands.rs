use std::fmt::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Serialize;
use serde_json::json;

use atomlab_core::connectivity::{atoms_with, kappa_auto, kappa_bruteforce_with, kappa_maxflow};
use atomlab_core::group::zero_sum_bound;
use atomlab_core::io::{parse_edge_list, write_dot, write_edge_list};
use atomlab_core::verifier::{
    check_girth_bound_with, scan, JPolicy, PointSymmetric, ScanConfig, ScanMode,
};
use atomlab_core::{cayley_graph, make_group, zero_sum, GeneratorSet, Limits, Relation};

use crate::args::{Cli, Command, Input, KappaAlgorithm, Mode};
use crate::Report;

pub fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Kappa { input, algorithm, brute_force_max } => kappa(input, *algorithm, *brute_force_max),
        Command::Atoms { input, brute_force_max } => atoms(input, *brute_force_max),
        Command::Verify { input, vertex, jmax, symmetry_max } => verify(input, *vertex, *jmax, *symmetry_max),
        Command::Girth { input, symmetry_max } => girth(input, *symmetry_max),
        Command::Scan { n, mode, samples, seed, j, alarm_dir } => {
            let config = ScanConfig {
                n: *n,
                j_policy: j.clone().map_or(JPolicy::All, JPolicy::List),
                mode: match mode {
                    Mode::Exhaustive => ScanMode::Exhaustive,
                    Mode::Random => ScanMode::Random { samples: *samples, seed: *seed },
                },
                threads: cli.threads,
                alarm_dir: Some(alarm_dir.clone()),
            };
            scan_cmd(&config)
        }
        Command::Zerosum { group, gens } => zerosum(group, gens),
        Command::Cayley { group, gens, reflexive, dot } => cayley(group, gens, *reflexive, dot.as_deref()),
    }
}

struct Loaded {
    rel: Relation,
    labels: Option<Vec<String>>,
}

/// Reads the input relation. Group inputs become Cayley graphs, with loops
/// when `group_reflexive`.
fn load(input: &Input, group_reflexive: bool) -> Result<Loaded> {
    let mut loaded = match (&input.file, &input.group) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
            let rel = parse_edge_list(&text).with_context(|| format!("{}", path.display()))?;
            Loaded { rel, labels: None }
        }
        (None, Some(desc)) => {
            let g = make_group(desc)?;
            let gens = GeneratorSet::parse(&g, input.gens.as_deref().unwrap_or_default())?;
            Loaded {
                rel: cayley_graph(&g, &gens, group_reflexive)?,
                labels: Some((0..g.order()).map(|a| g.element_name(a).to_string()).collect()),
            }
        }
        (None, None) => bail!("give an edge-list file or --group with --gens"),
    };
    if input.reflexive_closure {
        loaded.rel = loaded.rel.reflexive_closure();
    }
    if let Some(path) = &input.dot {
        std::fs::write(path, write_dot(&loaded.rel, loaded.labels.as_deref()))
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(loaded)
}

fn members_text(members: &[usize]) -> String {
    let parts: Vec<String> = members.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

#[derive(Serialize)]
struct KappaOut {
    n: usize,
    edges: usize,
    kappa: usize,
    complete: bool,
    witness_fragment: Option<Vec<usize>>,
    atom_size: Option<usize>,
    algorithm: atomlab_core::connectivity::Algorithm,
}

fn kappa(input: &Input, algorithm: KappaAlgorithm, brute_force_max: usize) -> Result<Report> {
    let Loaded { rel, .. } = load(input, true)?;
    let limits = Limits { brute_force_max_n: brute_force_max, ..Limits::default() };
    let mut rep = match algorithm {
        KappaAlgorithm::Auto => kappa_auto(&rel, &limits)?,
        KappaAlgorithm::Brute => kappa_bruteforce_with(&rel, &limits)?,
        KappaAlgorithm::Maxflow => kappa_maxflow(&rel)?,
    };
    if rep.atom_size.is_none() && !rep.complete && rel.n() <= limits.brute_force_max_n {
        rep.atom_size = kappa_bruteforce_with(&rel, &limits)?.atom_size;
    }
    let out = KappaOut {
        n: rel.n(),
        edges: rel.edge_count(),
        kappa: rep.kappa,
        complete: rep.complete,
        witness_fragment: rep.witness_fragment.as_ref().map(|w| w.to_vec()),
        atom_size: rep.atom_size,
        algorithm: rep.algorithm,
    };
    let mut text = format!("kappa={}\ncomplete={}\n", out.kappa, out.complete);
    if let Some(w) = &out.witness_fragment {
        let _ = writeln!(text, "witness={}", members_text(w));
    }
    match out.atom_size {
        Some(a) => {
            let _ = writeln!(text, "atom_size={a}");
        }
        None if !out.complete => text.push_str("atom_size=unknown\n"),
        None => {}
    }
    let _ = writeln!(text, "algorithm={}", serde_json::to_value(out.algorithm)?.as_str().unwrap_or("?"));
    Ok(Report { text, json: serde_json::to_value(&out)?, holds: true })
}

fn atoms(input: &Input, brute_force_max: usize) -> Result<Report> {
    let Loaded { rel, .. } = load(input, true)?;
    let limits = Limits { brute_force_max_n: brute_force_max, ..Limits::default() };
    let rep = atoms_with(&rel, &limits)?;
    let list: Vec<Vec<usize>> = rep.atoms.iter().map(|a| a.members.to_vec()).collect();
    let disjoint = rep.pairwise_disjoint();
    let mut text = format!(
        "kappa={}\natom_size={}\natoms={}\npairwise_disjoint={disjoint}\n",
        rep.kappa,
        rep.atom_size,
        list.len()
    );
    for a in &list {
        let _ = writeln!(text, "  {}", members_text(a));
    }
    let json = json!({
        "kappa": rep.kappa,
        "atom_size": rep.atom_size,
        "atoms": list,
        "pairwise_disjoint": disjoint,
    });
    Ok(Report { text, json, holds: true })
}

#[derive(Serialize)]
struct VerifyRow {
    j: usize,
    size: usize,
    eligible: bool,
    step_bound: Option<usize>,
    cumulative_bound: usize,
    /// `size − max(bounds)` at eligible `j ≥ 1`.
    slack: Option<i64>,
}

fn verify(input: &Input, vertex: usize, jmax: Option<usize>, symmetry_max: usize) -> Result<Report> {
    let Loaded { rel, .. } = load(input, true)?;
    let limits = Limits { symmetry_max_n: symmetry_max, ..Limits::default() };
    let cert = PointSymmetric::certify_with(&rel, &limits)?;
    let profile = atomlab_core::verifier::growth_profile(&rel, vertex, jmax)?;
    let step_check = cert.check_step(vertex)?;
    let cumulative_check = cert.check_cumulative(vertex)?;
    let rows: Vec<VerifyRow> = (0..=profile.jmax())
        .map(|j| {
            let step = (j >= 1).then(|| profile.step_bound(j));
            let cumulative = profile.cumulative_bound(j);
            let slack = (j >= 1 && profile.eligible[j])
                .then(|| profile.sizes[j] as i64 - step.unwrap_or(0).max(cumulative) as i64);
            VerifyRow {
                j,
                size: profile.sizes[j],
                eligible: profile.eligible[j],
                step_bound: step,
                cumulative_bound: cumulative,
                slack,
            }
        })
        .collect();
    let holds = step_check.holds && cumulative_check.holds;

    let mut text = format!(
        "vertex={vertex} n={} degree={} point_symmetric=true\n{:>3} {:>6} {:>9} {:>5} {:>5} {:>6}\n",
        rel.n(),
        profile.degree,
        "j",
        "size",
        "eligible",
        "step",
        "cum",
        "slack"
    );
    for r in &rows {
        let dash = |o: Option<String>| o.unwrap_or_else(|| "-".into());
        let _ = writeln!(
            text,
            "{:>3} {:>6} {:>9} {:>5} {:>5} {:>6}",
            r.j,
            r.size,
            r.eligible,
            dash(r.step_bound.map(|b| b.to_string())),
            r.cumulative_bound,
            dash(r.slack.map(|s| s.to_string()))
        );
    }
    let _ = writeln!(
        text,
        "growth_step={} cumulative={}",
        if step_check.holds { "holds" } else { "VIOLATED" },
        if cumulative_check.holds { "holds" } else { "VIOLATED" }
    );
    let json = json!({
        "vertex": vertex,
        "n": rel.n(),
        "degree": profile.degree,
        "rows": rows,
        "growth_step": step_check,
        "cumulative": cumulative_check,
        "holds": holds,
    });
    Ok(Report { text, json, holds })
}

fn girth(input: &Input, symmetry_max: usize) -> Result<Report> {
    let Loaded { rel, .. } = load(input, false)?;
    let limits = Limits { symmetry_max_n: symmetry_max, ..Limits::default() };
    let rep = check_girth_bound_with(&rel, &limits)?;
    let text = format!(
        "n={} degree={} girth={} bound=1+r(g-1)={} {}\n",
        rep.n,
        rep.degree,
        rep.girth,
        rep.bound,
        if rep.check.holds { "holds" } else { "VIOLATED" }
    );
    Ok(Report { text, json: serde_json::to_value(&rep)?, holds: rep.check.holds })
}

fn scan_cmd(config: &ScanConfig) -> Result<Report> {
    let rep = scan(config)?;
    let mut text = format!(
        "mode={} n={} j={:?} checked={} counterexamples={} seed={} elapsed_ms={}\n",
        rep.mode,
        rep.n,
        rep.j_policy,
        rep.checked,
        rep.counterexamples.len(),
        rep.seed.map_or("-".into(), |s| s.to_string()),
        rep.elapsed_ms
    );
    for c in &rep.counterexamples {
        text.push_str("--- counterexample\n");
        text.push_str(c);
    }
    let holds = rep.counterexamples.is_empty();
    Ok(Report { text, json: serde_json::to_value(&rep)?, holds })
}

fn zerosum(group: &str, gens: &str) -> Result<Report> {
    let g = make_group(group)?;
    let s = GeneratorSet::parse(&g, gens)?;
    let w = zero_sum(&g, &s);
    let bound = zero_sum_bound(&g, &s);
    let names = |xs: &[usize]| xs.iter().map(|&x| g.element_name(x).to_string()).collect::<Vec<_>>();
    let holds = w.k <= bound && w.is_valid(&g, &s);
    let text = format!(
        "group={} order={} gens=[{}]\nsequence=[{}]\nk={} bound={} {}\n",
        g.name(),
        g.order(),
        names(s.members()).join(", "),
        names(&w.sequence).join(", "),
        w.k,
        bound,
        if holds { "holds" } else { "VIOLATED" }
    );
    let json = json!({
        "group": g.name(),
        "order": g.order(),
        "gens": names(s.members()),
        "sequence": names(&w.sequence),
        "sequence_indices": w.sequence,
        "k": w.k,
        "bound": bound,
        "holds": holds,
    });
    Ok(Report { text, json, holds })
}

fn cayley(group: &str, gens: &str, reflexive: bool, dot: Option<&Path>) -> Result<Report> {
    let g = make_group(group)?;
    let s = GeneratorSet::parse(&g, gens)?;
    let rel = cayley_graph(&g, &s, reflexive)?;
    let labels: Vec<String> = (0..g.order()).map(|a| g.element_name(a).to_string()).collect();
    if let Some(path) = dot {
        std::fs::write(path, write_dot(&rel, Some(&labels))).with_context(|| format!("cannot write {}", path.display()))?;
    }
    let mut text = format!("# Cayley graph of {} with S = {{{}}}\n", g.name(), s.members().iter().map(|&x| labels[x].clone()).collect::<Vec<_>>().join(", "));
    text.push_str(&write_edge_list(&rel));
    let json = json!({
        "n": rel.n(),
        "edges": rel.edges().map(|(u, v)| [u, v]).collect::<Vec<_>>(),
        "names": labels,
    });
    Ok(Report { text, json, holds: true })
}
