//! JSON payload builders shared by the CLI and the C API. JSON is the
//! machine format; all text output elsewhere is a derived view.

use crate::characters::{CharacterTable, PartitionTable};
use crate::cyclotomic::Cyc;
use crate::group::{exponent, ClassData, FiniteGroup};
use crate::mckay::McKayVerdict;
use crate::polynomials::{ClassLattice, DegreePolynomial, LinearFormProduct};
use crate::verify::VerifyReport;
use num_bigint::BigInt;
use serde_json::{json, Value};

pub fn cyc_json(v: &Cyc) -> Value {
    json!({
        "exponent": v.e,
        "coeffs": v.c.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

pub fn bigints_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(|c| Value::String(c.to_string())).collect())
}

pub fn classes_json(g: &FiniteGroup, c: &ClassData) -> Value {
    let classes: Vec<Value> = (0..c.n_classes)
        .map(|i| {
            json!({
                "rep": c.reps[i],
                "size": c.sizes[i],
                "element_order": c.rep_orders[i],
                "inverse_class": c.inverse_class[i],
                "class_of_powers": (0..c.rep_orders[i])
                    .map(|j| c.power_class(g, i, j))
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "order": g.order(),
        "exponent": exponent(g),
        "n_classes": c.n_classes,
        "classes": classes,
    })
}

pub fn chartable_json(table: &CharacterTable) -> Value {
    let classes: Vec<Value> = (0..table.n)
        .map(|i| {
            json!({
                "rep": i,
                "size": table.class_sizes[i],
                "element_order": table.rep_orders[i],
                "inverse_class": table.inverse_class[i],
                "class_of_powers": table.power_classes[i],
            })
        })
        .collect();
    let characters: Vec<Value> = (0..table.n)
        .map(|t| {
            json!({
                "degree": table.degrees[t],
                "multiplicity": table.degrees[t],
                "values": table.values[t].iter().map(cyc_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "order": table.order,
        "exponent": table.m,
        "classes": classes,
        "characters": characters,
        "shadow_prime": table.shadow_p,
    })
}

pub fn partition_table_json(pt: &PartitionTable, partition_tag: &str) -> Value {
    let characters: Vec<Value> = (0..pt.n)
        .map(|t| {
            json!({
                "degree": pt.degrees[t],
                "multiplicity": pt.mults[t],
                "orbit_size": pt.orbit_sizes[t],
                "values": pt.values[t].iter().map(cyc_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "partition": partition_tag,
        "covered_order": pt.covered_order,
        "block_sizes": pt.block_sizes,
        "characters": characters,
    })
}

pub fn frobenius_json(forms: &LinearFormProduct, partition_tag: &str) -> Value {
    let forms_json: Vec<Value> = (0..forms.forms.len())
        .map(|t| {
            json!({
                "coeffs": forms.forms[t].iter().map(cyc_json).collect::<Vec<_>>(),
                "multiplicity": forms.mults[t],
            })
        })
        .collect();
    json!({
        "partition": partition_tag,
        "forms": forms_json,
    })
}

pub fn degree_poly_json(dp: &DegreePolynomial, partition_tag: &str, routes_agree: bool) -> Value {
    json!({
        "partition": partition_tag,
        "coeffs": bigints_json(&dp.coeffs),
        "roots": dp.roots,
        "factored": dp.render_factored(),
        "routes_agree": routes_agree,
    })
}

pub fn mckay_json(v: &McKayVerdict) -> Value {
    json!({
        "group": v.group,
        "order": v.order,
        "p": v.p,
        "field": v.subfield,
        "sylow_order": v.sylow_order,
        "normalizer_order": v.normalizer_order,
        "D_G_pprime": v.side_g.pprime,
        "D_N_pprime": v.side_n.pprime,
        "equal": v.equal,
        "M_table_G": v.m_table_g,
        "M_table_N": v.m_table_n,
        "galois_fixed": v.galois_fixed,
        "navarro_scope": v.navarro_scope,
        "degrees_G": v.side_g.degrees,
        "degrees_N": v.side_n.degrees,
    })
}

pub fn lattice_json(lat: &ClassLattice) -> Value {
    let nodes: Vec<Value> = lat
        .nodes
        .iter()
        .map(|(classes, size)| json!({ "classes": classes, "size": size }))
        .collect();
    json!({ "nodes": nodes, "edges": lat.edges })
}

pub fn verify_json(report: &VerifyReport) -> Value {
    let items: Vec<Value> = report
        .items
        .iter()
        .map(|(name, ok, detail)| json!({ "check": name, "passed": ok, "detail": detail }))
        .collect();
    json!({ "passed": report.passed(), "checks": items })
}
