//! Command-line front end. Every subcommand writes one report to the given
//! writer; with `--verify` the report is diffed against the bundled tables
//! and the differences are returned.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::bounds::{final_bounds, unit_case, unit_n8_search, zero_divisor_case, BoundInputs};
use crate::cycles::{
    builtin_catalog, c4_table, classify_complex, classify_cycle, find_complex, load_catalog, table_survivor_sets,
    table_label_matches,
};
use crate::kgraph::{check_structure, evaluate, Mode, SupportSpec};
use crate::patterns::{builtin_patterns, census, census_mismatches, load_patterns, ExpectedCensus};
use crate::quotient::Budget;
use crate::{gen, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "kaplansky", version, about = "Kaplansky graph relations, census and bounds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Cycle length, graph order, largest census order, or census order verified locally (per subcommand).
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Tietze search depth.
    #[arg(long, global = true, default_value_t = 6)]
    pub depth: usize,
    /// Coset table limit.
    #[arg(long, global = true, default_value_t = 200_000)]
    pub max_cosets: usize,
    /// Complex catalog (JSON) for `complex`, pattern catalog (TSV) for `census`.
    #[arg(long, global = true)]
    pub catalog: Option<PathBuf>,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Compare against the bundled reference counts; exit nonzero on mismatch.
    #[arg(long, global = true)]
    pub verify: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classes of single-cycle tuples with their verdicts (default length 4).
    Tuples,
    /// Relation cases of a composite structure.
    Complex {
        name: String,
    },
    /// Connected cubic triangle-free graphs of one order (default 10).
    Graphs,
    /// Forbidden-subgraph census for every even order up to `--n` (default 14).
    Census,
    /// Kaplansky graph of a support pair given as JSON (`-` for stdin).
    Kgraph {
        input: PathBuf,
        /// Structure checks to run.
        #[arg(long, value_enum, default_value_t = KMode::ZeroDivisor)]
        mode: KMode,
    },
    /// Small-support cases and the chained bounds.
    Bounds {
        /// Do not assume the external F2 unit result.
        #[arg(long)]
        no_dyk: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KMode {
    ZeroDivisor,
    Unit,
}

/// Reference counts for composites: `(name, total, finite solvable, survivors)`.
pub const COMPLEX_EXPECTED: &[(&str, usize, usize, usize)] = &[("C4--C5", 121, 111, 10), ("C4--C6", 658, 632, 20)];

/// Class counts per cycle length.
pub const CLASS_COUNTS: &[(usize, usize)] = &[(4, 36), (5, 105), (6, 351), (7, 1173)];

impl Cli {
    pub fn budget(&self) -> Budget {
        Budget { depth: self.depth, max_cosets: self.max_cosets, ..Budget::default() }
    }
}

fn csv_line(out: &mut dyn Write, cells: &[String]) -> Result<()> {
    let mut w = csv::Writer::from_writer(&mut *out);
    w.write_record(cells).map_err(|e| Error::Io(e.into()))?;
    w.flush()?;
    Ok(())
}

fn emit_json(out: &mut dyn Write, v: &impl Serialize) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)?;
    Ok(())
}

/// Run one command. Returns the `--verify` mismatches (empty when not verifying).
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Vec<String>> {
    if cli.jobs > 0 {
        // only the first call configures the global pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global();
    }
    match &cli.command {
        Command::Tuples => tuples(cli, out),
        Command::Complex { name } => complex(cli, name, out),
        Command::Graphs => graphs(cli, out),
        Command::Census => census_cmd(cli, out),
        Command::Kgraph { input, mode } => kgraph(cli, input, *mode, out),
        Command::Bounds { no_dyk } => bounds(cli, *no_dyk, out),
    }
}

fn tuples(cli: &Cli, out: &mut dyn Write) -> Result<Vec<String>> {
    let k = cli.n.unwrap_or(4);
    if !(3..=8).contains(&k) {
        return Err(Error::Domain(format!("cycle length must be 3..=8, got {k}")));
    }
    let rows = classify_cycle(k, &cli.budget());
    let table = if k == 4 { c4_table() } else { Vec::new() };
    let mut bad = Vec::new();
    if cli.verify {
        if let Some(&(_, want)) = CLASS_COUNTS.iter().find(|c| c.0 == k) {
            if rows.len() != want {
                bad.push(format!("k={k}: {} classes, expected {want}", rows.len()));
            }
        }
        for (r, (row, label)) in rows.iter().zip(&table) {
            if !table_label_matches(label, &r.verdict.kind) {
                bad.push(format!("row {row}: {} vs table {label}", r.verdict));
            }
        }
    }
    let tuple_str = |t: &[crate::words::Letter]| t.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ");
    match cli.format {
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|r| {
                    let mut o = json!({
                        "row": r.class.row,
                        "tuple": tuple_str(&r.class.tuple),
                        "orbit_size": r.class.orbit_size,
                        "relator": r.class.relator.to_string(),
                        "verdict": r.verdict.to_string(),
                        "evidence": r.verdict.evidence,
                    });
                    if let Some((_, e)) = table.get(r.class.row - 1) {
                        o["table"] = json!(e);
                    }
                    o
                })
                .collect();
            emit_json(out, &v)?;
        }
        Format::Csv => {
            csv_line(out, &["row", "tuple", "orbit_size", "relator", "verdict", "table"].map(String::from))?;
            for r in &rows {
                let t = table.get(r.class.row - 1).map(|e| e.1.clone()).unwrap_or_default();
                csv_line(
                    out,
                    &[
                        r.class.row.to_string(),
                        tuple_str(&r.class.tuple),
                        r.class.orbit_size.to_string(),
                        r.class.relator.to_string(),
                        r.verdict.to_string(),
                        t,
                    ],
                )?;
            }
        }
    }
    Ok(bad)
}

fn complex(cli: &Cli, name: &str, out: &mut dyn Write) -> Result<Vec<String>> {
    let catalog = match &cli.catalog {
        Some(p) => load_catalog(&std::fs::read_to_string(p)?)?,
        None => builtin_catalog(),
    };
    let cx = find_complex(&catalog, name)?;
    let rep = classify_complex(&cx, &table_survivor_sets(), &cli.budget());
    let mut bad = Vec::new();
    if cli.verify {
        if let Some(&(_, t, fs, s)) = COMPLEX_EXPECTED.iter().find(|e| e.0 == name) {
            let got = (rep.total, rep.finite_solvable, rep.survivors.len());
            if got != (t, fs, s) {
                bad.push(format!("{name}: got {got:?}, expected {:?}", (t, fs, s)));
            }
        }
    }
    match cli.format {
        Format::Json => emit_json(out, &rep)?,
        Format::Csv => {
            csv_line(out, &["case", "relations", "verdict"].map(String::from))?;
            for (i, c) in rep.survivors.iter().enumerate() {
                let rels: Vec<String> = c.relations.iter().map(|w| w.to_string()).collect();
                csv_line(out, &[(i + 1).to_string(), rels.join("; "), c.verdict.to_string()])?;
            }
        }
    }
    Ok(bad)
}

fn graphs(cli: &Cli, out: &mut dyn Write) -> Result<Vec<String>> {
    let n = cli.n.unwrap_or(10);
    let gs = gen::generate(n)?;
    let mut bad = Vec::new();
    if cli.verify {
        if let Some(want) = ExpectedCensus::builtin().get("Total", n) {
            if want != gs.len() {
                bad.push(format!("n={n}: {} graphs, expected {want}", gs.len()));
            }
        }
    }
    let g6: Vec<String> = gs.iter().map(|g| g.to_graph6()).collect();
    match cli.format {
        Format::Json => emit_json(out, &json!({ "n": n, "count": gs.len(), "graph6": g6 }))?,
        Format::Csv => {
            csv_line(out, &["n".into(), "graph6".into()])?;
            for g in g6 {
                csv_line(out, &[n.to_string(), g])?;
            }
        }
    }
    Ok(bad)
}

fn census_cmd(cli: &Cli, out: &mut dyn Write) -> Result<Vec<String>> {
    let n_max = cli.n.unwrap_or(14);
    let catalog = match &cli.catalog {
        Some(p) => load_patterns(&std::fs::read_to_string(p)?)?,
        None => builtin_patterns(),
    };
    let expected = ExpectedCensus::builtin();
    let mut rows = Vec::new();
    let mut bad = Vec::new();
    for n in (4..=n_max).step_by(2) {
        let row = census(n, &catalog)?;
        if cli.verify {
            if let Some(want) = expected.column(n, &catalog) {
                bad.extend(census_mismatches(&row, &want).into_iter().map(|m| format!("n={n} {m}")));
            }
        }
        rows.push(row);
    }
    match cli.format {
        Format::Json => emit_json(out, &rows)?,
        Format::Csv => {
            let mut head = vec!["row".to_string()];
            head.extend(rows.iter().map(|r| format!("n={}", r.n)));
            csv_line(out, &head)?;
            let mut line = |name: &str, f: &dyn Fn(&crate::patterns::CensusRow) -> usize| {
                let mut cells = vec![name.to_string()];
                cells.extend(rows.iter().map(|r| f(r).to_string()));
                csv_line(out, &cells)
            };
            line("Total", &|r| r.total)?;
            for (i, p) in catalog.iter().enumerate() {
                line(&p.name, &|r| r.removed[i].1)?;
            }
            line("Ln", &|r| r.ln)?;
            line("Mn", &|r| r.mn)?;
            line("Remains", &|r| r.remains)?;
        }
    }
    Ok(bad)
}

fn kgraph(cli: &Cli, input: &PathBuf, mode: KMode, out: &mut dyn Write) -> Result<Vec<String>> {
    let text = if input.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())?
    } else {
        std::fs::read_to_string(input)?
    };
    let spec: SupportSpec = serde_json::from_str(&text)?;
    let rep = evaluate(&spec)?;
    let mode = match mode {
        KMode::ZeroDivisor => Mode::ZeroDivisorF2,
        KMode::Unit => Mode::UnitF,
    };
    let violations: Vec<String> = check_structure(&rep.graph, mode).iter().map(|v| format!("{v:?}")).collect();
    let mut bad = Vec::new();
    if cli.verify && rep.graph != rep.cayley {
        bad.push("Kaplansky graph differs from the induced Cayley graph".into());
    }
    match cli.format {
        Format::Json => emit_json(
            out,
            &json!({
                "model": spec.model,
                "vertices": spec.beta,
                "edges": rep.graph.edges(),
                "graph6": rep.graph.to_graph6(),
                "connection_set_size": rep.connection_set_size,
                "f2_zero_product": rep.f2_zero_product,
                "matches_cayley": rep.graph == rep.cayley,
                "violations": violations,
            }),
        )?,
        Format::Csv => {
            csv_line(out, &["u".into(), "v".into()])?;
            for (u, v) in rep.graph.edges() {
                csv_line(out, &[spec.beta[u].clone(), spec.beta[v].clone()])?;
            }
        }
    }
    Ok(bad)
}

fn bounds(cli: &Cli, no_dyk: bool, out: &mut dyn Write) -> Result<Vec<String>> {
    let verified = cli.n.unwrap_or(14);
    let fb = final_bounds(&BoundInputs::standard(verified, !no_dyk));
    let mut bad = Vec::new();
    if cli.verify {
        let want = if no_dyk { (9, 20, 8) } else { (10, 20, 9) };
        if fb.values() != want {
            bad.push(format!("bounds {:?}, expected {want:?}", fb.values()));
        }
    }
    match cli.format {
        Format::Json => {
            let zd: Vec<_> = (3..=9).filter_map(|n| zero_divisor_case(n).ok()).collect();
            let un: Vec<_> = (2..=8).filter_map(|n| unit_case(n).ok()).collect();
            emit_json(
                out,
                &json!({
                    "bounds": fb,
                    "zero_divisor_cases": zd,
                    "unit_cases": un,
                    "unit_n8_survivors": unit_n8_search().len(),
                }),
            )?
        }
        Format::Csv => {
            csv_line(out, &["bound", "value", "conditional", "trace"].map(String::from))?;
            for (name, b) in [
                ("zero_divisor_general", &fb.zero_divisor_general),
                ("zero_divisor_f2", &fb.zero_divisor_f2),
                ("unit_general", &fb.unit_general),
            ] {
                csv_line(out, &[name.into(), b.value.to_string(), b.conditional.to_string(), b.trace.join(" | ")])?;
            }
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<(String, Vec<String>)> {
        let cli = Cli::try_parse_from(std::iter::once("kaplansky").chain(args.iter().copied())).unwrap();
        let mut buf = Vec::new();
        let bad = run(&cli, &mut buf)?;
        Ok((String::from_utf8(buf).unwrap(), bad))
    }

    #[test]
    fn tuples_verify_k4() {
        let (out, bad) = run_args(&["tuples", "--n", "4", "--verify", "--format", "csv"]).unwrap();
        assert!(bad.is_empty(), "{bad:?}");
        assert_eq!(out.lines().count(), 37);
        let stars: Vec<&str> = out.lines().filter(|l| l.ends_with(",*")).map(|l| l.split(',').next().unwrap()).collect();
        assert_eq!(stars, ["5", "7", "14", "17", "21", "22", "25", "26", "29"]);
    }

    #[test]
    fn unknown_complex_is_catalog_error() {
        assert!(matches!(run_args(&["complex", "C9--C9"]), Err(Error::Catalog(_))));
    }

    #[test]
    fn census_small_orders() {
        let (out, bad) = run_args(&["census", "--n", "10", "--verify", "--format", "csv"]).unwrap();
        assert!(bad.is_empty(), "{bad:?}");
        assert!(out.starts_with("row,n=4,n=6,n=8,n=10\nTotal,0,1,2,6\n\"K2,3\",0,1,0,1\n"), "{out}");
    }

    #[test]
    fn bounds_verify() {
        let (_, bad) = run_args(&["bounds", "--verify"]).unwrap();
        assert!(bad.is_empty(), "{bad:?}");
    }
}
