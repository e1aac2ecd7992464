use qqm_core::measurement::{mul_symbols, MeasurementSymbol, SymbolSum, TableRegistry, TransformationTable};
use qqm_core::quat::random_quaternion;
use qqm_core::Quaternion;
use rand::Rng;

use super::{dim_for, label, random_symbol, rng_for, scale_of, Frame, Outcome};
use crate::config::ResolvedConfig;
use crate::error::CliResult;
use crate::report::{MaxDev, Record};

pub fn run(cfg: &ResolvedConfig) -> CliResult<Outcome> {
    let mut rng = rng_for(cfg);
    let weight_tol = cfg.tolerance("weight", 1e-12);
    let adjoint_tol = cfg.tolerance("adjoint", 1e-12);

    // Selective symbols in one basis: exact index structure and weights.
    let mut idem = MaxDev::default();
    let mut structure = true;
    for &n in &cfg.dims {
        let a = label("A", n);
        let id = TransformationTable::identity(&a);
        for i in 0..n {
            for j in 0..n {
                let mi = MeasurementSymbol::selective(&a, i)?;
                let mj = MeasurementSymbol::selective(&a, j)?;
                let p = mul_symbols(&mi, &mj, &id)?;
                let expected = if i == j { Quaternion::ONE } else { Quaternion::ZERO };
                idem.push(p.weight().max_abs_diff(expected));
                structure &= (p.out_state(), p.in_state()) == (i, j) && p.out_basis() == &a && p.in_basis() == &a;
            }
        }
    }

    let mut completeness = MaxDev::default();
    let mut delta = MaxDev::default();
    let mut delta_structure = true;
    let mut product = MaxDev::default();
    let mut assoc = MaxDev::default();
    let mut adj_product = MaxDev::default();
    let mut adj_scalar = MaxDev::default();
    let mut adj_oracle = MaxDev::default();
    let mut selective_adj = true;

    for k in 0..cfg.trials {
        let n = dim_for(cfg, k);
        let frame = Frame::random(&mut rng, &["A", "B", "C", "D"], n);
        let [a, b, c, d] = [0, 1, 2, 3].map(|i| frame.labels[i].clone());

        let id_a = TransformationTable::identity(&a);
        let m = SymbolSum::from_symbol(&random_symbol(&mut rng, &a, &a));
        let one = SymbolSum::identity(&a);
        let s = scale_of(&[m.symbols()[0].weight()]);
        completeness.push(one.mul(&m, &id_a)?.max_abs_diff(&m) / s);
        completeness.push(m.mul(&one, &id_a)?.max_abs_diff(&m) / s);

        // M̂ₐᴬ M̂ᵦᴮ carries ⟨a|b⟩ and keeps the outer labels.
        let t_ab = frame.table(0, 1)?;
        let (i, j) = (rng.random_range(0..n), rng.random_range(0..n));
        let p = mul_symbols(&MeasurementSymbol::selective(&a, i)?, &MeasurementSymbol::selective(&b, j)?, &t_ab)?;
        delta.push(p.weight().max_abs_diff(t_ab.get(i, j)));
        delta_structure &= (p.out_state(), p.in_state()) == (i, j) && p.out_basis() == &a && p.in_basis() == &b;

        // General cross-basis product against the reference-frame matrices.
        let x = random_symbol(&mut rng, &a, &b);
        let y = random_symbol(&mut rng, &c, &d);
        let xy = mul_symbols(&x, &y, &frame.table(1, 2)?)?;
        let s = scale_of(&[x.weight(), y.weight()]);
        product.push((&frame.operator(&x) * &frame.operator(&y)).max_abs_diff(&frame.operator(&xy)) / s);

        let reg = TableRegistry::new();
        for w in 0..3 {
            reg.register_pair(frame.table(w, w + 1)?, frame.table(w + 1, w)?)?;
        }
        let z = random_symbol(&mut rng, &d, &a);
        let s3 = scale_of(&[x.weight(), y.weight(), z.weight()]);
        let left = reg.mul(&reg.mul(&x, &y)?, &z);
        let right = reg.mul(&x, &reg.mul(&y, &z)?);
        // x·y·z needs ⟨b|c⟩ and ⟨d|d⟩, so both groupings are defined.
        assoc.push(left?.weight().max_abs_diff(right?.weight()) / s3);

        // (XY)† = Y†X† with X: A←B, Y: C←A, so both sides need a table.
        let x = random_symbol(&mut rng, &a, &b);
        let y = random_symbol(&mut rng, &c, &a);
        let s = scale_of(&[x.weight(), y.weight()]);
        let lhs = reg.mul(&x, &y)?.adjoint();
        let rhs = reg.mul(&y.adjoint(), &x.adjoint())?;
        let same_labels = (lhs.out_state(), lhs.in_state()) == (rhs.out_state(), rhs.in_state())
            && lhs.out_basis() == rhs.out_basis()
            && lhs.in_basis() == rhs.in_basis();
        adj_product.push(if same_labels { lhs.weight().max_abs_diff(rhs.weight()) / s } else { f64::INFINITY });
        adj_oracle.push(frame.operator(&x).adjoint().max_abs_diff(&frame.operator(&x.adjoint())) / s);

        let lambda = random_quaternion(&mut rng, false);
        let scaled = y.scale_left(lambda).adjoint();
        let expected = y.adjoint().scale_right(lambda.conj());
        adj_scalar.push(scaled.weight().max_abs_diff(expected.weight()) / (s * lambda.norm().max(1.0)));

        let sel = MeasurementSymbol::selective(&b, j)?;
        selective_adj &= sel.adjoint() == sel;
    }

    let records = vec![
        Record::upper("idempotence_orthogonality", idem.get(), cfg.tolerance("idempotence_orthogonality", 0.0)),
        Record::flag("idempotence_index_structure", structure),
        Record::upper("completeness", completeness.get(), cfg.tolerance("completeness", weight_tol)),
        Record::upper("delta_composition", delta.get(), cfg.tolerance("delta_composition", weight_tol)),
        Record::flag("delta_composition_index_structure", delta_structure),
        Record::upper("product_matrix_oracle", product.get(), cfg.tolerance("product_matrix_oracle", weight_tol)),
        Record::upper("product_associativity", assoc.get(), cfg.tolerance("product_associativity", weight_tol)),
        Record::upper("adjoint_of_product", adj_product.get(), cfg.tolerance("adjoint_of_product", adjoint_tol)),
        Record::upper("adjoint_matrix_oracle", adj_oracle.get(), cfg.tolerance("adjoint_matrix_oracle", adjoint_tol)),
        Record::upper("adjoint_of_scalar", adj_scalar.get(), cfg.tolerance("adjoint_of_scalar", adjoint_tol)),
        Record::flag("selective_self_adjoint", selective_adj),
    ];
    Ok(Outcome { records, traces: Vec::new() })
}
