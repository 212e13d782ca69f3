//! The four subcommands, each returning `Err(Failure)` with the exit code
//! baked into the variant.

use hermann_core::angles::format_angle;
use hermann_core::austere::{
    austere_finite, austere_pf, minimal_orbit, sample_points, totally_geodesic,
    verify_implications,
};
use hermann_core::catalog::{build_entry, expected_roots, list_catalog, verify_entry, BuiltEntry};
use hermann_core::orbitgeom::{
    classify_phases, finite_spectrum, perp_block_deviation, pf_spectrum, truncation_report,
    PhaseClass, PhaseTable,
};
use hermann_core::Error;

use crate::config::{resolve, resolve_point, CommonArgs, Resolved};
use crate::report::{
    spectrum_files, truncation_files, write_json, CatalogExport, CatalogList, PfReport,
    PropertyReport, SpectrumReport, SpectrumRow, TheoremReport, TruncationRow, TruncationTable,
    VectorEntry,
};
use crate::Failure;

/// Eigenvalues compared per truncated block.
const TRUNCATION_COMPARE: usize = 10;

fn build(cfg: &Resolved) -> Result<BuiltEntry, Failure> {
    let name = cfg.entry_name()?;
    build_entry(name, &cfg.params, cfg.tol.clone())
        .map_err(|e| Failure::config(format!("entry: {e}")))
}

/// A phase in the guard band means the requested point cannot be
/// classified reliably; that is a problem with the input, not the entry.
fn phase_err(e: Error) -> Failure {
    match e {
        Error::PhaseAmbiguity { .. } => Failure::config(format!("w: {e}")),
        other => Failure::violation(other.to_string()),
    }
}

fn point_and_direction(
    cfg: &Resolved,
    t_dim: usize,
) -> Result<(Vec<f64>, Vec<f64>), Failure> {
    let w_spec = cfg
        .w_spec
        .as_deref()
        .ok_or_else(|| Failure::config("w: no point named (use --w)".into()))?;
    let w = resolve_point("w", w_spec, t_dim)?;
    let xi = match cfg.xi_spec.as_deref() {
        Some(spec) => resolve_point("xi", spec, t_dim)?,
        None => vec![1.0; t_dim],
    };
    Ok((w, xi))
}

fn display_point(w: &[f64]) -> String {
    let body: Vec<String> = w.iter().map(|&c| format_angle(c)).collect();
    format!("({})", body.join(", "))
}

fn param_summary(entry: &BuiltEntry) -> String {
    let kv: Vec<String> = entry.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    if kv.is_empty() {
        entry.name.clone()
    } else {
        format!("{} {}", entry.name, kv.join(" "))
    }
}

pub fn cmd_analyze(
    common: &CommonArgs,
    w_flag: Option<&str>,
    xi_flag: Option<&str>,
) -> Result<(), Failure> {
    let cfg = resolve(common, w_flag, xi_flag, None, None)?;
    let entry = build(&cfg)?;
    let rs = &entry.root_system;
    let (w, xi) = point_and_direction(&cfg, rs.t_dim)?;

    let table = classify_phases(&entry.pair, rs, &w).map_err(phase_err)?;
    let finite = finite_spectrum(rs, &table, &xi).map_err(phase_err)?;
    let pf = pf_spectrum(rs, &table, &xi).map_err(phase_err)?;
    let fin_rep = austere_finite(&entry.pair, rs, &table).map_err(phase_err)?;
    let lift_rep = austere_pf(&entry.pair, rs, &table).map_err(phase_err)?;
    let min_rep = minimal_orbit(&entry.pair, rs, &table).map_err(phase_err)?;

    let spectrum = SpectrumReport {
        schema: 1,
        entry: entry.name.clone(),
        w: w.clone(),
        xi: xi.clone(),
        rows: finite
            .iter()
            .map(|s| SpectrumRow {
                value: s.value,
                mult: s.mult,
                root_index: s.source.map(|(r, _)| r),
                eps_index: s.source.map(|(_, e)| e),
                eps_angle: s
                    .source
                    .map(|(r, e)| rs.positive_roots[r].eps_components[e].eps_angle),
            })
            .collect(),
    };
    let pf_report = PfReport {
        schema: 1,
        entry: entry.name.clone(),
        w: w.clone(),
        xi: xi.clone(),
        families: pf.families,
    };
    let property = PropertyReport {
        schema: 1,
        entry: entry.name.clone(),
        params: entry.params.clone(),
        w: w.clone(),
        w_display: w.iter().map(|&c| format_angle(c)).collect(),
        xi: xi.clone(),
        regular: table.regular,
        totally_geodesic: totally_geodesic(&table),
        austere_finite: fin_rep.austere,
        austere_pf: lift_rep.austere,
        minimal: min_rep.minimal,
        mean_curvature_norm: min_rep.norm,
        tangent_dim: table.tangent_dim,
        normal_dim: table.normal_dim,
        curvature_vectors: fin_rep
            .vectors
            .iter()
            .map(|(v, m)| VectorEntry { vector: v.clone(), mult: *m })
            .collect(),
        pf_line_offsets: lift_rep.lines,
    };

    let p1 = spectrum_files(&cfg.out, &spectrum, cfg.format)?;
    let p2 = write_json(&cfg.out, "pf_spectrum.json", &pf_report)?;
    let p3 = write_json(&cfg.out, "property_report.json", &property)?;

    println!(
        "{} at w = {}: regular={} totally_geodesic={} austere_finite={} austere_pf={} minimal={}",
        param_summary(&entry),
        display_point(&w),
        property.regular,
        property.totally_geodesic,
        property.austere_finite,
        property.austere_pf,
        property.minimal,
    );
    println!("wrote {}, {}, {}", p1.display(), p2.display(), p3.display());
    Ok(())
}

/// Supported test-hook faults for `verify --inject-fault`.
fn apply_fault(entry: &mut BuiltEntry, fault: &str) -> Result<(), Failure> {
    match fault {
        "corrupt-multiplicity" => {
            let line = entry
                .root_system
                .lines
                .iter()
                .find(|l| l.members.len() == 2)
                .cloned()
                .ok_or_else(|| {
                    Failure::config(
                        "inject-fault: corrupt-multiplicity needs an entry with a double root"
                            .into(),
                    )
                })?;
            entry.root_system.positive_roots[line.members[0].0].m_alpha = 0;
            Ok(())
        }
        other => Err(Failure::config(format!("inject-fault: unknown fault `{other}`"))),
    }
}

pub fn cmd_verify(
    common: &CommonArgs,
    grid_flag: Option<usize>,
    inject_fault: Option<&str>,
) -> Result<(), Failure> {
    let cfg = resolve(common, None, None, grid_flag, None)?;
    let mut entry = build(&cfg)?;
    if let Some(fault) = inject_fault {
        apply_fault(&mut entry, fault)?;
    }

    let golden = verify_entry(&entry);
    let points = sample_points(entry.root_system.t_dim, cfg.grid, cfg.tol.seed);
    let implications = verify_implications(&entry.pair, &entry.root_system, &points)
        .map_err(|e| Failure::violation(e.to_string()))?;

    let ok = golden.ok && implications.ok;
    let report = TheoremReport {
        schema: 1,
        entry: entry.name.clone(),
        params: entry.params.clone(),
        grid: cfg.grid,
        golden_ok: golden.ok,
        golden_mismatches: golden.mismatches.clone(),
        checks: implications.checks.clone(),
        lift_only_points: implications.lift_only_points.clone(),
        skipped: implications.skipped,
        points_checked: implications.points_checked,
        ok,
    };
    let path = write_json(&cfg.out, "theorem_report.json", &report)?;

    if ok {
        println!(
            "{}: {} checks clean over {} points ({} skipped in the guard band)",
            param_summary(&entry),
            report.checks.len(),
            report.points_checked,
            report.skipped,
        );
        println!("wrote {}", path.display());
        Ok(())
    } else {
        let mut lines = Vec::new();
        for m in &golden.mismatches {
            lines.push(format!("golden: {m}"));
        }
        for c in report.checks.iter().filter(|c| !c.violations.is_empty()) {
            lines.push(format!("{}: {}", c.name, c.violations.join("; ")));
        }
        Err(Failure::violation(format!(
            "{} violations in {} (report at {}):\n  {}",
            lines.len(),
            param_summary(&entry),
            path.display(),
            lines.join("\n  "),
        )))
    }
}

fn truncation_rows(table: &PhaseTable, xi: &[f64], n_list: &[usize]) -> Vec<TruncationRow> {
    let mut rows = Vec::new();
    for e in &table.entries {
        let alpha_xi: f64 = e.alpha.iter().zip(xi).map(|(a, b)| a * b).sum();
        for &n in n_list {
            match e.class {
                PhaseClass::Top { .. } => {
                    let rep = truncation_report(alpha_xi, e.theta, n, TRUNCATION_COMPARE);
                    rows.push(TruncationRow {
                        block: "top",
                        root_index: e.root_index,
                        eps_index: e.eps_index,
                        alpha_xi,
                        theta: Some(e.theta),
                        n,
                        symmetry_defect: rep.symmetry_defect,
                        deviation: rep.top_deviation,
                    });
                }
                PhaseClass::Perp => {
                    rows.push(TruncationRow {
                        block: "perp",
                        root_index: e.root_index,
                        eps_index: e.eps_index,
                        alpha_xi,
                        theta: None,
                        n,
                        symmetry_defect: 0.0,
                        deviation: perp_block_deviation(alpha_xi, n),
                    });
                }
            }
        }
    }
    rows
}

pub fn cmd_truncate(
    common: &CommonArgs,
    w_flag: Option<&str>,
    xi_flag: Option<&str>,
    n_flag: Option<&str>,
) -> Result<(), Failure> {
    let cfg = resolve(common, w_flag, xi_flag, None, n_flag)?;
    let entry = build(&cfg)?;
    let rs = &entry.root_system;
    let (w, xi) = point_and_direction(&cfg, rs.t_dim)?;

    let table = classify_phases(&entry.pair, rs, &w).map_err(phase_err)?;
    let rows = truncation_rows(&table, &xi, &cfg.n_list);
    let out = TruncationTable {
        schema: 1,
        entry: entry.name.clone(),
        w: w.clone(),
        xi,
        compare: TRUNCATION_COMPARE,
        rows,
    };
    let path = truncation_files(&cfg.out, &out, cfg.format)?;

    let tops = out.rows.iter().filter(|r| r.block == "top").count();
    let perps = out.rows.iter().filter(|r| r.block == "perp").count();
    println!(
        "{} at w = {}: {} top rows, {} perp rows over orders {:?}",
        param_summary(&entry),
        display_point(&w),
        tops,
        perps,
        cfg.n_list,
    );
    println!("wrote {}", path.display());
    Ok(())
}

pub fn cmd_catalog(common: &CommonArgs) -> Result<(), Failure> {
    let cfg = resolve(common, None, None, None, None)?;

    if cfg.entry.is_none() {
        let list = CatalogList { schema: 1, entries: list_catalog() };
        if cfg.format == crate::config::Format::Json {
            let path = write_json(&cfg.out, "catalog.json", &list)?;
            println!("wrote {}", path.display());
        } else {
            for info in &list.entries {
                println!("{:<12} {:<22} {}", info.name, info.params, info.description);
            }
        }
        return Ok(());
    }

    let entry = build(&cfg)?;
    let export = CatalogExport {
        schema: 1,
        entry: entry.name.clone(),
        params: entry.params.clone(),
        expected_roots: expected_roots(&entry.name, &entry.params),
        extracted: entry.root_system.to_record(),
    };
    let golden = verify_entry(&entry);
    let path = write_json(&cfg.out, &format!("catalog_{}.json", entry.name), &export)?;
    println!("wrote {}", path.display());
    if !golden.ok {
        return Err(Failure::violation(format!(
            "extracted data disagrees with the closed form: {}",
            golden.mismatches.join("; "),
        )));
    }
    Ok(())
}
