use qqm_core::measurement::{
    check_degree_constraint, mul_symbols, sandwich, transition_probability, transition_weight, GaugePhase, TablePair,
    TransformationTable, DEGREE_TOLERANCE,
};
use super::{dim_for, label, random_symbol, rng_for, scale_of, Outcome};
use crate::config::ResolvedConfig;
use crate::error::CliResult;
use crate::report::{MaxDev, Record};

/// `p ≥ 0`, `p(a|b) = p(b|a)` and unit row and column sums.
pub fn invariants(cfg: &ResolvedConfig) -> CliResult<Outcome> {
    let mut rng = rng_for(cfg);
    let mut negativity = MaxDev::default();
    let mut symmetry = MaxDev::default();
    let mut weight_real = MaxDev::default();
    let mut normalization = MaxDev::default();
    for k in 0..cfg.trials {
        let n = dim_for(cfg, k);
        let t = TransformationTable::random_unitary(&mut rng, label("A", n), label("B", n))?;
        let pair = TablePair::reciprocal(t.clone());
        let back = pair.backward();
        let mut rows = vec![0.0; n];
        let mut cols = vec![0.0; n];
        for a in 0..n {
            for b in 0..n {
                let p = transition_probability(&t, a, b);
                negativity.push((-p).max(0.0));
                symmetry.push((p - transition_probability(back, b, a)).abs());
                let w = transition_weight(&pair, a, b);
                weight_real.push((w.w - p).abs().max(w.imag_norm()));
                rows[a] += p;
                cols[b] += p;
            }
        }
        for s in rows.iter().chain(&cols) {
            normalization.push((s - 1.0).abs());
        }
    }
    let records = vec![
        Record::upper("probability_nonnegative", negativity.get(), cfg.tolerance("probability_nonnegative", 0.0)),
        Record::upper("probability_symmetry", symmetry.get(), cfg.tolerance("probability_symmetry", 1e-12)),
        Record::upper("transition_weight_real", weight_real.get(), cfg.tolerance("transition_weight_real", 1e-12)),
        Record::upper("probability_normalization", normalization.get(), cfg.tolerance("probability_normalization", 1e-10)),
    ];
    Ok(Outcome { records, traces: Vec::new() })
}

/// Gauge invariance of `p(a|b)`, the sandwich identity and gauge
/// covariance of symbol products.
pub fn gauge_sweep(cfg: &ResolvedConfig) -> CliResult<Outcome> {
    let mut rng = rng_for(cfg);
    let mut dp = MaxDev::default();
    let mut sandwich_real = MaxDev::default();
    let mut sandwich_imag = MaxDev::default();
    let mut sandwich_gauge = MaxDev::default();
    let mut covariance = MaxDev::default();
    for k in 0..cfg.trials {
        let n = dim_for(cfg, k);
        let (a, b) = (label("A", n), label("B", n));
        let t = TransformationTable::random_unitary(&mut rng, a.clone(), b.clone())?;
        let ga = GaugePhase::random(&mut rng, &a);
        let gb = GaugePhase::random(&mut rng, &b);
        let tg = t.gauge_transform(&ga, &gb)?;
        for i in 0..n {
            for j in 0..n {
                let p = transition_probability(&t, i, j);
                dp.push((p - transition_probability(&tg, i, j)).abs());
                let w = sandwich(j, i, &t)?;
                sandwich_real.push((w.w - p).abs());
                sandwich_imag.push(w.imag_norm());
                sandwich_gauge.push(sandwich(j, i, &tg)?.max_abs_diff(w));
            }
        }
        let link = t.reciprocal();
        let link_g = link.gauge_transform(&gb, &ga)?;
        let x = random_symbol(&mut rng, &a, &b);
        let y = random_symbol(&mut rng, &a, &a);
        let before = mul_symbols(&x, &y, &link)?;
        let after = mul_symbols(&x.gauge_transform(&ga, &gb)?, &y.gauge_transform(&ga, &ga)?, &link_g)?;
        let expected = before.gauge_transform(&ga, &ga)?;
        covariance.push(after.weight().max_abs_diff(expected.weight()) / scale_of(&[x.weight(), y.weight()]));
    }
    let records = vec![
        Record::upper("gauge_probability", dp.get(), cfg.tolerance("gauge_probability", 1e-12)),
        Record::upper("sandwich_real_part", sandwich_real.get(), cfg.tolerance("sandwich_real_part", 1e-12)),
        Record::upper("sandwich_imaginary_norm", sandwich_imag.get(), cfg.tolerance("sandwich_imaginary_norm", 1e-12)),
        Record::upper("sandwich_gauge", sandwich_gauge.get(), cfg.tolerance("sandwich_gauge", 1e-12)),
        Record::upper("gauge_product_covariance", covariance.get(), cfg.tolerance("gauge_product_covariance", 1e-12)),
    ];
    Ok(Outcome { records, traces: Vec::new() })
}

/// Reciprocal pairs satisfy the degree constraint with both sides equal to
/// the dimension; independently drawn pairs generically break it.
pub fn degree_constraint(cfg: &ResolvedConfig) -> CliResult<Outcome> {
    let mut rng = rng_for(cfg);
    let mut balance = MaxDev::default();
    let mut trace = MaxDev::default();
    let mut all_hold = true;
    let mut raw_min = f64::INFINITY;
    for k in 0..cfg.trials {
        let n = dim_for(cfg, k);
        let (a, b) = (label("A", n), label("B", n));
        let t = TransformationTable::random_unitary(&mut rng, a.clone(), b.clone())?;
        let d = check_degree_constraint(&TablePair::reciprocal(t.clone()));
        all_hold &= d.holds;
        balance.push(d.lhs.max_abs_diff(d.rhs));
        trace.push((d.lhs - qqm_core::Quaternion::real(n as f64)).norm());

        let other = TransformationTable::random_unitary(&mut rng, b.clone(), a.clone())?;
        let raw = check_degree_constraint(&TablePair::raw(t, other)?);
        let imbalance = raw.lhs.max_abs_diff(raw.rhs);
        raw_min = if imbalance.is_nan() { f64::NAN } else { raw_min.min(imbalance) };
    }
    let records = vec![
        Record::flag("reciprocal_holds", all_hold),
        Record::upper("reciprocal_balance", balance.get(), cfg.tolerance("reciprocal_balance", DEGREE_TOLERANCE)),
        Record::upper("reciprocal_equals_dimension", trace.get(), cfg.tolerance("reciprocal_equals_dimension", 1e-10)),
        Record::lower("raw_pair_imbalance", raw_min, cfg.tolerance("raw_pair_imbalance", DEGREE_TOLERANCE)),
    ];
    Ok(Outcome { records, traces: Vec::new() })
}
