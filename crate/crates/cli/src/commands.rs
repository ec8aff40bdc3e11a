//! One function per subcommand.

use std::path::PathBuf;

use rug::{Float, Rational};
use serde_json::{json, Value};

use dml_core::bigreal::{rational_to_decimal, to_decimal_string, Precision};
use dml_core::densities::{density_grid_csv, density_moment, locate_crossing, Metric};
use dml_core::exact::{format_rational, parse_rational, rat};
use dml_core::moments::{
    bivariate_moment, leading_coefficients_rebit, nongeneric_moment, numerator_polynomial, product_moment,
    pt_moment, sixbysix_adjustment, table_lookup, tables::table_len, Family, MomentQuery, SixBySix, TableId,
};
use dml_core::reconstruct::legendre::{separability_estimate, Estimate};
use dml_core::reconstruct::{
    build_moment_sequence, gauss_rule, mnatsakanov, MomentSequence, QuadratureMethod,
};
use dml_core::sampler::{
    joint_histogram, mc_moment, mc_separability_probability, nongeneric_separability_probability, Ensemble,
    Measure, Ring,
};

use crate::artifact::{
    emit, header, write_file, Cli, CliError, CliResult, Command, DensityArgs, EstimateArgs, EstimateMethod,
    HistArgs, McArgs, MomentArgs, NumeratorArgs, QuadratureArgs, TableArgs,
};

pub fn execute(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Moment(a) => moment(cli, a),
        Command::Table(a) => table(cli, a),
        Command::Numerator(a) => numerator(cli, a),
        Command::Estimate(a) => estimate(cli, a),
        Command::Quadrature(a) => quadrature(cli, a),
        Command::Mc(a) => mc(cli, a),
        Command::Hist(a) => hist(cli, a),
        Command::Density(a) => density(cli, a),
    }
}

fn default_precision(cli: &Cli) -> CliResult<Precision> {
    cli.global.precision_or(Precision::default())
}

fn exact_json(value: &Rational, p: Precision) -> Value {
    json!({
        "exact": format_rational(value),
        "decimal": rational_to_decimal(value, p.decimal_digits()),
    })
}

fn moment(cli: &Cli, a: &MomentArgs) -> CliResult<()> {
    let p = default_precision(cli)?;
    let value = if let Some(kind) = a.sixbysix {
        sixbysix_adjustment(kind, a.n, a.k)?
    } else if let Some(beta) = a.beta {
        nongeneric_moment(beta, a.n, a.k)?
    } else {
        MomentQuery {
            alpha: parse_rational(&a.alpha)?,
            n: a.n,
            k: a.k,
            variable: a.variable,
        }
        .evaluate()?
    };
    emit(cli, header(cli, Some(p), None), exact_json(&value, p))
}

fn table(cli: &Cli, a: &TableArgs) -> CliResult<()> {
    let p = default_precision(cli)?;
    let rows: Vec<u32> = match a.n {
        Some(n) => vec![n],
        None => (1..=table_len(a.table)).collect(),
    };
    let half = rat(1, 2);
    let mut out = Vec::with_capacity(rows.len());
    for n in rows {
        let v = table_lookup(a.table, n)?;
        let computed = match a.table {
            TableId::AppA => Some(pt_moment(&half, n)),
            TableId::AppB => Some(product_moment(&half, n)),
            TableId::AppC => None,
        };
        let mut row = exact_json(&v, p);
        row["n"] = json!(n);
        row["reproduced"] = json!(computed.map(|c| c == v));
        out.push(row);
    }
    emit(
        cli,
        header(cli, Some(p), None),
        json!({ "table": a.table.to_string(), "rows": out }),
    )
}

fn numerator(cli: &Cli, a: &NumeratorArgs) -> CliResult<()> {
    let p = default_precision(cli)?;
    let family = match a.family.to_ascii_lowercase().as_str() {
        "rebit" => Family::Rebit,
        "qubit" => Family::Qubit,
        other => Family::General(parse_rational(other)?),
    };
    let poly = numerator_polynomial(&family, a.n)?;
    let coefficients: Vec<String> = poly.coefficients().iter().map(format_rational).collect();
    let mut result = json!({
        "alpha": format_rational(&family.alpha()),
        "n": a.n,
        "degree": poly.degree(),
        "coefficients_ascending": coefficients,
        "polynomial": poly.to_string(),
    });
    if family == Family::Rebit {
        let top = poly.degree().unwrap_or(0);
        let mut leading = Vec::new();
        for depth in 0..=(3 * a.n).min(5) {
            let closed = leading_coefficients_rebit(a.n, depth)?;
            let actual = poly.coefficient(top.saturating_sub(depth as usize));
            leading.push(json!({
                "depth": depth,
                "closed_form": format_rational(&closed),
                "matches": closed == actual,
            }));
        }
        result["leading_coefficients"] = json!(leading);
    }
    emit(cli, header(cli, Some(p), None), result)
}

fn threshold(ms: &MomentSequence) -> CliResult<Rational> {
    ms.threshold()
        .cloned()
        .ok_or_else(|| CliError::Usage("the variable has no separability threshold".into()))
}

fn estimate(cli: &Cli, a: &EstimateArgs) -> CliResult<()> {
    let p = cli.global.precision_or(Precision::for_moments(a.num_moments))?;
    let alpha = parse_rational(&a.alpha)?;
    let record = match a.method {
        EstimateMethod::Legendre => separability_estimate(&alpha, a.variable, a.num_moments, p)?,
        method => {
            let ms = build_moment_sequence(&alpha, a.variable, a.num_moments, p)?;
            let t = threshold(&ms)?;
            let (value, name) = if method == EstimateMethod::Mnatsakanov {
                let approx = mnatsakanov(&ms, a.num_moments)?;
                (
                    Float::with_val(p.bits(), &approx.tail_probability(&t)),
                    "mnatsakanov",
                )
            } else {
                let rule = gauss_rule(&ms, a.num_moments / 2, p, QuadratureMethod::Hankel)?;
                (rule.threshold_probability(&t), "quadrature")
            };
            Estimate {
                alpha: format_rational(&alpha),
                variable: a.variable,
                n_moments: a.num_moments,
                precision_digits: p.decimal_digits(),
                method: name.into(),
                estimate: to_decimal_string(&value, p.decimal_digits() as usize),
                threshold: format_rational(&t),
            }
        }
    };
    let result = serde_json::to_value(&record).expect("estimate serializes");
    emit(cli, header(cli, Some(p), None), result)
}

fn csv_target(cli: &Cli, explicit: &Option<PathBuf>) -> Option<PathBuf> {
    explicit
        .clone()
        .or_else(|| cli.global.output.as_ref().map(|o| o.with_extension("csv")))
}

fn quadrature(cli: &Cli, a: &QuadratureArgs) -> CliResult<()> {
    let p = cli.global.precision_or(Precision::digits(50)?)?;
    let alpha = parse_rational(&a.alpha)?;
    let ms = build_moment_sequence(&alpha, a.variable, 2 * a.nodes, p)?;
    let t = threshold(&ms)?;
    let rule = gauss_rule(&ms, a.nodes, p, a.method)?;
    let digits = p.decimal_digits() as usize;
    let prob = rule.threshold_probability(&t);
    let eps_max = rule
        .epsilon
        .iter()
        .map(|e| Float::with_val(p.bits(), e.abs_ref()))
        .fold(Float::with_val(p.bits(), 0), |m, e| if e > m { e } else { m });
    let nodes = rule.nodes_in(&ms.range);
    let node_strings: Vec<String> = nodes.iter().map(|x| to_decimal_string(x, digits)).collect();
    let weight_strings: Vec<String> = rule
        .weights
        .iter()
        .map(|w| to_decimal_string(w, digits))
        .collect();
    let csv_path = csv_target(cli, &a.csv);
    if let Some(path) = &csv_path {
        let mut text = String::from("node,weight\n");
        for (x, w) in node_strings.iter().zip(&weight_strings) {
            text.push_str(&format!("{x},{w}\n"));
        }
        text.push_str(&format!("epsilon_max,{}\n", to_decimal_string(&eps_max, 6)));
        write_file(path, &text)?;
    }
    let positive = nodes
        .iter()
        .filter(|x| x.is_sign_positive() && !x.is_zero())
        .count();
    let result = json!({
        "prob_above_threshold": to_decimal_string(&prob, digits),
        "threshold": format_rational(&t),
        "epsilon_max": to_decimal_string(&eps_max, 6),
        "tolerance": to_decimal_string(&rule.tolerance(), 3),
        "positive_nodes": positive,
        "nodes": node_strings,
        "weights": weight_strings,
        "csv": csv_path.map(|p| p.display().to_string()),
    });
    emit(cli, header(cli, Some(p), None), result)
}

fn ring_alpha(ring: Ring) -> Rational {
    match ring {
        Ring::Real => rat(1, 2),
        Ring::Complex => rat(1, 1),
        Ring::Quaternion => rat(2, 1),
    }
}

fn mc(cli: &Cli, a: &McArgs) -> CliResult<()> {
    let p = default_precision(cli)?;
    let (stats, exact) = if let Some(beta) = a.beta {
        (
            nongeneric_separability_probability(beta, a.samples, a.seed)?,
            None,
        )
    } else {
        let ensemble = Ensemble::new(a.ring, a.measure, a.d)?;
        if a.separability {
            (mc_separability_probability(&ensemble, a.samples, a.seed)?, None)
        } else {
            let exact = match (a.measure, a.d, a.ring) {
                (Measure::Hs, 4, ring) => Some(bivariate_moment(&ring_alpha(ring), a.n, a.k)),
                (Measure::Hs, 6, Ring::Real) if a.k == 0 => {
                    sixbysix_adjustment(SixBySix::RebitRetrit, a.n, 0).ok()
                }
                (Measure::Hs, 6, Ring::Complex) if a.k == 0 => {
                    sixbysix_adjustment(SixBySix::QubitQutrit, a.n, 0).ok()
                }
                _ => None,
            };
            (mc_moment(&ensemble, a.n, a.k, a.samples, a.seed), exact)
        }
    };
    let mut result = serde_json::to_value(stats).expect("stats serialize");
    if let Some(v) = &exact {
        result["exact"] = json!(format_rational(v));
        result["z_score"] = json!(stats.z_score(v.to_f64()));
    }
    emit(cli, header(cli, Some(p), Some(a.seed)), result)
}

fn hist(cli: &Cli, a: &HistArgs) -> CliResult<()> {
    let h = joint_histogram(a.ring, a.samples, a.bins, a.seed)?;
    let csv_path = csv_target(cli, &a.csv);
    if let Some(path) = &csv_path {
        write_file(path, &h.to_csv())?;
    }
    let result = json!({
        "total": h.total(),
        "bins": [h.nx, h.ny],
        "x_range": ["0", "1/256"],
        "y_range": ["-1/16", "1/256"],
        "csv": csv_path.map(|p| p.display().to_string()),
    });
    emit(cli, header(cli, None, Some(a.seed)), result)
}

fn density(cli: &Cli, a: &DensityArgs) -> CliResult<()> {
    let csv_path = csv_target(cli, &a.csv);
    if let Some(path) = &csv_path {
        write_file(path, &density_grid_csv(a.points)?)?;
    }
    let result = json!({
        "normalization": {
            "hs": density_moment(Metric::Hs, 0)?,
            "bures": density_moment(Metric::Bures, 0)?,
        },
        "first_moment": {
            "hs": density_moment(Metric::Hs, 1)?,
            "bures": density_moment(Metric::Bures, 1)?,
        },
        "crossing": locate_crossing(1e-3, 0.1)?,
        "csv": csv_path.map(|p| p.display().to_string()),
    });
    emit(cli, header(cli, None, None), result)
}
