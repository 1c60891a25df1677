use mumford_trop::berkovich_tree::{path_distance, TypeTwoPoint};
use mumford_trop::faithful_trop::{
    tropicalize, Label, Tropicalization, TropicalizeOptions,
};
use mumford_trop::moebius_schottky::{
    check_automorphy, is_normalized, log_q, normalize, sample_boundary_points,
    sample_exterior_points, u_log_abs, verify_good_domain, P1Point, SchottkyRank2,
    TruncatedProduct,
};
use mumford_trop::skeleton_jacobian::{
    build_skeleton, check_mu_cycle_isometry, grid_decompositions, mu_lift,
    two_summand_decomposition, SkeletonPoint, TropLattice,
};
use mumford_trop::Rat;

use crate::error::{CliError, EXIT_FAILURE, EXIT_OK};
use crate::instance::{instance_to_file, parse_instance, Instance};
use crate::report::{
    curve_table, faithfulness_row, marked_rows, slope_table, CheckRow, Classification, PeriodRow,
    Report,
};
use crate::svg::render_svg;

pub const DEFAULT_WORDS: usize = 4;

pub fn default_grid() -> Rat {
    Rat::new(1.into(), 16.into())
}

#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub report: Report,
    pub exit_code: i32,
    pub svg: Option<String>,
    /// Short human-readable outcome for the terminal.
    pub summary: String,
}

fn load(text: &str) -> Result<Instance, CliError> {
    let inst = parse_instance(text)?;
    if let Some(p) = inst.options.precision {
        mumford_trop::valued_field::set_default_precision(p)?;
    }
    Ok(inst)
}

fn require_good_domain(s: &SchottkyRank2, report: &mut Report) -> Result<(), String> {
    let v = verify_good_domain(s);
    report.checks.extend(v.checks.iter().map(CheckRow::from));
    let failed: Vec<String> = v.failures().map(|c| format!("{} ({})", c.name, c.detail)).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        report.verdict = "fail".into();
        Err(failed.join("; "))
    }
}

/// Skeleton type, cycle lengths and period matrix.
pub fn cmd_classify(text: &str) -> Result<CommandOutput, CliError> {
    let inst = load(text)?;
    let mut report = Report::new("classify", instance_to_file(&inst));
    if let Err(why) = require_good_domain(&inst.schottky, &mut report) {
        return Ok(CommandOutput {
            report,
            exit_code: EXIT_FAILURE,
            svg: None,
            summary: format!("not a good fundamental domain: {why}"),
        });
    }
    let s = normalize(&inst.schottky)?;
    let q = log_q(&s)?;
    let skel = build_skeleton(&s, &q)?;
    report.classification = Some(Classification::new(&skel));
    report.period_matrix = Some(PeriodRow::new(&q));
    let summary = format!(
        "{}: cycle lengths {} and {}, edge length {}",
        skel.kind, skel.lengths[0], skel.lengths[1], skel.ell
    );
    Ok(CommandOutput {
        report,
        exit_code: EXIT_OK,
        svg: None,
        summary,
    })
}

fn fill_tropicalization(report: &mut Report, t: &Tropicalization, dim: usize) {
    let msk = &t.coordinates.marked;
    report.classification = Some(Classification::new(&msk.skel));
    report.period_matrix = Some(PeriodRow::new(&t.period_matrix));
    report.marked_points = marked_rows(msk, &t.lattice);
    for (k, name) in ["f", "g", "h"].iter().enumerate().take(dim) {
        report.slopes.push(slope_table(
            name,
            t.coordinates.divisors[k].to_string(),
            msk,
            &t.slopes[k],
        ));
    }
    let (curve, faithful) = if dim == 2 {
        (&t.curve_2d, &t.report_2d)
    } else {
        (&t.curve_3d, &t.report_3d)
    };
    report.curve = Some(curve_table(msk, curve));
    report.faithfulness = Some(faithfulness_row(msk, curve, faithful));
    report.warnings = t.warnings.clone();
}

/// Full pipeline in dimension 2 or 3.
pub fn cmd_tropicalize(text: &str, dim: usize) -> Result<CommandOutput, CliError> {
    if !(2..=3).contains(&dim) {
        return Err(CliError::Verification(format!("dimension must be 2 or 3, got {dim}")));
    }
    let inst = load(text)?;
    let mut report = Report::new("tropicalize", instance_to_file(&inst));
    if let Err(why) = require_good_domain(&inst.schottky, &mut report) {
        return Ok(CommandOutput {
            report,
            exit_code: EXIT_FAILURE,
            svg: None,
            summary: format!("not a good fundamental domain: {why}"),
        });
    }
    report.checks.clear();
    let options = TropicalizeOptions {
        join_edges: inst.options.join_edges.clone(),
    };
    let t = tropicalize(&inst.schottky, &options)?;
    fill_tropicalization(&mut report, &t, dim);
    let (curve, faithful) = if dim == 2 {
        (&t.curve_2d, &t.report_2d)
    } else {
        (&t.curve_3d, &t.report_3d)
    };
    report.verdict = if faithful.extended_faithful {
        "faithful".into()
    } else if faithful.skeleton_faithful {
        "skeleton faithful".into()
    } else {
        "not faithful".into()
    };
    let crossings = faithful.skeleton_crossings.len() + faithful.extended_crossings.len();
    let summary = format!(
        "dimension {dim}: {}, {crossings} crossing(s)",
        report.verdict
    );
    let title = format!("{} tropical curve in dimension {dim}", t.coordinates.marked.skel.kind);
    Ok(CommandOutput {
        svg: Some(render_svg(curve, faithful, &title)),
        report,
        exit_code: EXIT_OK,
        summary,
    })
}

fn failed(name: &str, err: impl std::fmt::Display) -> CheckRow {
    CheckRow::new(name, false, format!("error: {err}"))
}

fn multiplier_checks(s: &SchottkyRank2) -> Vec<CheckRow> {
    (0..2)
        .map(|i| {
            let name = format!("multiplier of gamma{} matches tree distance", i + 1);
            let tree = path_distance(
                &TypeTwoPoint::new(s.b[i].center.clone(), s.b[i].log_radius.clone()),
                &TypeTwoPoint::new(s.c[i].center.clone(), s.c[i].log_radius.clone()),
            );
            match s.gens[i].multiplier_log_abs() {
                Ok(k) => {
                    let period = -k;
                    CheckRow::new(
                        name,
                        period == tree,
                        format!("-log|k| = {period}, tree distance {tree}"),
                    )
                }
                Err(e) => failed(&name, e),
            }
        })
        .collect()
}

fn product_checks(s: &SchottkyRank2, words: usize) -> Vec<CheckRow> {
    let points = match (sample_exterior_points(s, 6), sample_boundary_points(s)) {
        (Ok(mut p), Ok(b)) => {
            p.extend(b);
            p
        }
        (Err(e), _) | (_, Err(e)) => return vec![failed("truncated product", e)],
    };
    if points.len() < 2 {
        return vec![failed("truncated product", "too few sample points")];
    }
    let base = P1Point::Finite(points[0].clone());
    let products = [0, 1].map(|i| TruncatedProduct::new(s, i, &base, words));
    let closed: Vec<[_; 2]> = points[1..]
        .iter()
        .map(|z| [0, 1].map(|i| u_log_abs(s, i, &P1Point::Finite(z.clone()))))
        .collect();
    let mut out = Vec::new();
    for len in 1..=words {
        let name = format!("truncated product of length {len} equals log|u_i|");
        let mut witness = None;
        let mut count = 0;
        'outer: for (z, closed) in points[1..].iter().zip(&closed) {
            for i in 0..2 {
                let trunc = products[i].log_abs(z, len);
                match (&closed[i], trunc) {
                    (Ok(a), Ok(b)) if *a == b => count += 1,
                    (a, b) => {
                        witness = Some(format!("u{} at {z}: closed {a:?}, truncated {b:?}", i + 1));
                        break 'outer;
                    }
                }
            }
        }
        out.push(match witness {
            None => CheckRow::new(name, true, format!("{count} evaluations agree")),
            Some(w) => CheckRow::new(name, false, w),
        });
    }
    out
}

fn on_grid(p: &SkeletonPoint, step: &Rat) -> bool {
    match p {
        SkeletonPoint::Cycle { arc, .. } => (arc / step).is_integer(),
        SkeletonPoint::Shared { offset } | SkeletonPoint::Bridge { offset } => {
            (offset / step).is_integer()
        }
    }
}

fn decomposition_check(
    t: &Tropicalization,
    step: &Rat,
) -> mumford_trop::Result<CheckRow> {
    let msk = &t.coordinates.marked;
    let lift = |l: Label| mu_lift(&msk.skel, &msk.marks[&l]);
    let (s3, p1, p3, t2) = (lift(Label::S3)?, lift(Label::P1)?, lift(Label::P3)?, lift(Label::T2)?);
    let target = t.lattice.reduce(&[
        &s3[0] + &p1[0] + &p3[0] - &t2[0],
        &s3[1] + &p1[1] + &p3[1] - &t2[1],
    ]);
    let pair = two_summand_decomposition(&t.lattice, &msk.skel, &target)?;
    let found = grid_decompositions(&t.lattice, &msk.skel, &target, step)?;
    let expected = if on_grid(&pair.0, step) && on_grid(&pair.1, step) {
        vec![pair.clone()]
    } else {
        Vec::new()
    };
    let detail = format!(
        "target {target}: decomposition ({}; {}), grid pairs {}",
        pair.0,
        pair.1,
        found.len()
    );
    Ok(CheckRow::new(
        "two-point decomposition is unique on the grid",
        found == expected,
        detail,
    ))
}

fn pipeline_checks(s: &SchottkyRank2, words: usize, step: &Rat) -> mumford_trop::Result<Vec<CheckRow>> {
    let mut out = Vec::new();
    let n = normalize(s)?;
    out.push(CheckRow::new(
        "normalized ordering",
        is_normalized(&n)?,
        "|b1| < |b2| < |c1| < |c2| after conjugation",
    ));
    let q = log_q(&n)?;
    let skel = build_skeleton(&n, &q);
    out.push(match &skel {
        Ok(k) => CheckRow::new("period matrix agrees with tree geometry", true, format!("{} {q}", k.kind)),
        Err(e) => failed("period matrix agrees with tree geometry", e),
    });
    let skel = skel?;
    out.extend(check_automorphy(&n, &q).iter().map(CheckRow::from));
    out.extend(product_checks(&n, words));
    let lattice = TropLattice::from_period_matrix(&q)?;
    let iso = check_mu_cycle_isometry(&skel, &lattice, step)?;
    out.push(CheckRow::new(
        "mu is isometric on the cycles",
        iso.passed(),
        match iso.violations.first() {
            None => format!("{} pairs at step {step}", iso.pairs_checked),
            Some(v) => format!(
                "cycle {} arcs {} and {}: arc distance {}, image distance {}",
                v.cycle + 1,
                v.arcs.0,
                v.arcs.1,
                v.arc_distance,
                v.image_distance
            ),
        },
    ));
    let t = tropicalize(&n, &TropicalizeOptions::default())?;
    out.push(decomposition_check(&t, step)?);
    for (k, name) in ["f", "g", "h"].iter().enumerate() {
        let sol = &t.slopes[k];
        out.push(CheckRow::new(
            format!("slope field of {name} is harmonic and integral"),
            sol.is_harmonic() && sol.integral,
            format!("{} edges", sol.slopes.len()),
        ));
    }
    for (dim, curve) in [(2, &t.curve_2d), (3, &t.curve_3d)] {
        out.push(CheckRow::new(
            format!("curve in dimension {dim} is balanced"),
            curve.is_balanced(),
            format!("{} vertices", curve.vertices.len()),
        ));
    }
    out.push(CheckRow::new(
        "skeleton image in dimension 2 is faithful",
        t.report_2d.skeleton_faithful,
        format!("{} skeleton crossings", t.report_2d.skeleton_crossings.len()),
    ));
    out.push(CheckRow::new(
        "extended skeleton image in dimension 3 is faithful",
        t.report_3d.extended_faithful,
        format!("{} crossings", t.report_3d.extended_crossings.len()),
    ));
    Ok(out)
}

/// Runs the verification suite; failures are report content.
pub fn cmd_verify(
    text: &str,
    words: Option<usize>,
    grid: Option<Rat>,
) -> Result<CommandOutput, CliError> {
    let inst = load(text)?;
    let words = words.or(inst.options.words).unwrap_or(DEFAULT_WORDS);
    let step = grid.or_else(|| inst.options.grid.clone()).unwrap_or_else(default_grid);
    let mut report = Report::new("verify", instance_to_file(&inst));
    let s = &inst.schottky;
    let good = require_good_domain(s, &mut report).is_ok();
    report.checks.extend(multiplier_checks(s));
    if good {
        match pipeline_checks(s, words, &step) {
            Ok(rows) => report.checks.extend(rows),
            Err(e) => report.checks.push(failed("pipeline", e)),
        }
    } else {
        report
            .warnings
            .push("fundamental domain checks failed; remaining checks skipped".into());
    }
    let passed = report.checks.iter().filter(|c| c.passed).count();
    let total = report.checks.len();
    let ok = report.all_checks_passed();
    report.verdict = if ok { "pass" } else { "fail" }.into();
    let mut summary = format!("{passed}/{total} checks passed");
    for c in report.checks.iter().filter(|c| !c.passed) {
        summary.push_str(&format!("\nFAILED {}: {}", c.name, c.detail));
    }
    Ok(CommandOutput {
        report,
        exit_code: if ok { EXIT_OK } else { EXIT_FAILURE },
        svg: None,
        summary,
    })
}
