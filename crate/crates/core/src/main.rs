//! Command-line surface. JSON is the machine format; text renderings are
//! derived views and are never parsed back. Exit codes: 0 success, 1 a
//! verification or conjecture check failed, 2 input error.

use clap::{Args, Parser, Subcommand};
use grouppoly::cache::Cache;
use grouppoly::characters::{lift_character_table, partition_character_table, CharacterTable};
use grouppoly::class_algebra::{
    casimir_matrix, char_poly_of_element, gram_matrix, regular_representation,
};
use grouppoly::commutators::{
    brute_counts, commutator_counts, reconstruct_from_triples, reduce_forms_at, Convention,
};
use grouppoly::cyclotomic::Cyc;
use grouppoly::error::Error;
use grouppoly::group::{
    conjugacy_classes, exponent, load_group, ClassData, FiniteGroup, GroupSource,
    DEFAULT_ORDER_BOUND,
};
use grouppoly::mckay::{f_character_data, galois_fixed_counts, mckay_check, residue_degree_counts};
use grouppoly::partition::{
    build_partition, structure_constants, validate_good_partition, GoodPartition, PartitionKind,
    StructTensor,
};
use grouppoly::polynomials::{
    degree_polynomial_both, equal_by_permutation, frobenius_polynomial, group_determinant_check,
    normal_subgroup_lattice, p_prime_part,
};
use grouppoly::verify::run_all;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "grouppoly",
    version,
    about = "Exact partition-algebra engine for finite groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GroupArgs {
    /// Builtin spec: Zn:<k>, Sn:<k>, An:<k>, D:<2k>, Q8, SL23, products with x
    #[arg(long)]
    builtin: Option<String>,
    /// Cayley-table file (line 1 = order, then 1-based rows)
    #[arg(long)]
    cayley: Option<PathBuf>,
    /// Permutation-generator file, one cycle-notation generator per line
    #[arg(long)]
    perms: Option<PathBuf>,
    /// Replace the group by the normalizer of one of its Sylow p-subgroups
    #[arg(long, value_name = "P")]
    normalizer_of_sylow: Option<u64>,
    /// Order bound for loading and closure
    #[arg(long, default_value_t = DEFAULT_ORDER_BOUND)]
    bound: usize,
}

impl GroupArgs {
    fn source(&self) -> Result<GroupSource, Error> {
        let base = match (&self.builtin, &self.cayley, &self.perms) {
            (Some(b), None, None) => GroupSource::Builtin(b.clone()),
            (None, Some(f), None) => GroupSource::CayleyFile(f.clone()),
            (None, None, Some(f)) => GroupSource::PermFile(f.clone()),
            _ => {
                return Err(Error::Parse(
                    "specify exactly one of --builtin, --cayley, --perms".into(),
                ))
            }
        };
        Ok(match self.normalizer_of_sylow {
            Some(p) => GroupSource::SylowNormalizer(Box::new(base), p),
            None => base,
        })
    }

    fn load(&self) -> Result<FiniteGroup, Error> {
        load_group(&self.source()?, self.bound)
    }
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Output format: text or json
    #[arg(long, default_value = "text")]
    format: String,
    /// Seed recorded in every report and used for sampling
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cache directory for class data and character tables
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct PartitionArg {
    /// Partition spec: trivial | rational | galois=<t,..> | coset=<classes>
    /// | subgroup=<classes> | custom=<b;b;..>
    #[arg(long, default_value = "trivial")]
    partition: String,
}

#[derive(Subcommand)]
enum Command {
    /// Conjugacy classes, inverse pairing and power maps
    Classes {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Build and validate a good partition
    Partition {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        part: PartitionArg,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Structure-constant tensor of the partition algebra
    Structconst {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        part: PartitionArg,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Gram matrix, determinant and semisimplicity verdict
    Gram {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        part: PartitionArg,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Characteristic polynomial of an element of the partition algebra
    Charpoly {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        part: PartitionArg,
        /// Rational coefficients of the element, e.g. 1,0,1/3
        #[arg(long)]
        coeffs: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Generalized Casimir matrix and its characteristic polynomial
    Casimir {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        part: PartitionArg,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Exact character table (trivial partition) or block-sum table
    Chartable {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        part: PartitionArg,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Factored Frobenius polynomial
    Frobpoly {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        part: PartitionArg,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Degree polynomial by the Casimir and character routes
    Degpoly {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        part: PartitionArg,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// p'-part of the degree polynomial
    Pprime {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        part: PartitionArg,
        #[arg(short, long)]
        prime: u64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Generalized-commutator count tensors p_i, p_ij, p_ijl
    Pijl {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        part: PartitionArg,
        /// Counting convention: partition or ordinary
        #[arg(long, default_value = "partition")]
        convention: String,
        /// Cross-check against element-level brute force (order <= 200)
        #[arg(long)]
        brute: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Reconstruct the Frobenius polynomial from the triple invariants
    Reconstruct {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        part: PartitionArg,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Compare p'-degree polynomials of G and its Sylow normalizer
    Mckay {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(short, long)]
        prime: u64,
        /// Galois residues defining the subfield (closed automatically)
        #[arg(long, value_delimiter = ',')]
        subfield: Option<Vec<u64>>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Scan all prime divisors (optionally a whole corpus) and emit one
    /// CSV line per verdict
    MckayScan {
        #[command(flatten)]
        group: GroupArgs,
        /// Scan the bundled desk corpus instead of a single group
        #[arg(long)]
        corpus: bool,
        /// Galois residues defining the subfield
        #[arg(long, value_delimiter = ',')]
        subfield: Option<Vec<u64>>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Residue-class degree counts M_i
    Mtable {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(short, long)]
        prime: u64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Galois-fixed p'-degree character count for one automorphism
    GaloisFixed {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(short, long)]
        prime: u64,
        /// Residue t defining the automorphism
        #[arg(short = 't', long)]
        residue: u64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// F-characters: Galois orbit sums over a subfield
    Fchars {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_delimiter = ',')]
        subfield: Vec<u64>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Normal-subgroup lattice from closed class subsets
    Lattice {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Decide equality of two Frobenius polynomials up to permutation
    Compare {
        #[command(flatten)]
        group: GroupArgs,
        /// Second group, builtin spec
        #[arg(long)]
        builtin2: Option<String>,
        /// Second group, Cayley file
        #[arg(long)]
        cayley2: Option<PathBuf>,
        /// Second group, permutation file
        #[arg(long)]
        perms2: Option<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Random collapsed evaluations of the group determinant (order <= 60)
    Detcheck {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        part: PartitionArg,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run the full invariant suite on one group
    VerifyAll {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(match dispatch(cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {}", e);
            match e {
                Error::VerificationFailed(_) => 1,
                _ => 2,
            }
        }
    });
}

// ---------------------------------------------------------------------------
// rendering helpers
// ---------------------------------------------------------------------------

use grouppoly::report::{bigints_json, cyc_json};

fn cyc_text(v: &Cyc) -> String {
    match v.as_rational() {
        Some(r) => r.to_string(),
        None => v.render(),
    }
}

fn rationals_json(v: &[BigRational]) -> Value {
    Value::Array(v.iter().map(|c| Value::String(c.to_string())).collect())
}

fn envelope(command: &str, seed: u64, g: &FiniteGroup, payload: Value) -> Value {
    json!({
        "command": command,
        "seed": seed,
        "group": g.origin,
        "order": g.order(),
        "report": payload,
    })
}

/// Write to stdout, exiting quietly when the reader closed the pipe.
fn print_out(s: &str) {
    use std::io::Write;
    let mut out = std::io::stdout();
    if out.write_all(s.as_bytes()).is_err() || out.flush().is_err() {
        std::process::exit(0);
    }
}

fn emit(common: &CommonArgs, envelope: Value, text: String) {
    if common.format == "json" {
        print_out(&serde_json::to_string_pretty(&envelope).unwrap());
        print_out("\n");
    } else {
        print_out(&text);
    }
}

fn render_rational_poly(coeffs: &[BigRational], var: &str) -> String {
    let mut parts = Vec::new();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = match k {
            0 => c.to_string(),
            1 => format!("{}*{}", c, var),
            _ => format!("{}*{}^{}", c, var, k),
        };
        parts.push(term);
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

struct FullStack {
    classes: ClassData,
    part: GoodPartition,
    tensor: StructTensor,
    rep: grouppoly::class_algebra::RegularRep,
    gram: grouppoly::class_algebra::GramMatrix,
}

fn full_stack(g: &FiniteGroup, spec: &str) -> Result<FullStack, Error> {
    let classes = conjugacy_classes(g);
    let kind = PartitionKind::parse(spec)?;
    let part = build_partition(g, &classes, &kind)?;
    let tensor = structure_constants(g, &classes, &part)?;
    let rep = regular_representation(&tensor, &part)?;
    let gram = gram_matrix(&rep)?;
    Ok(FullStack { classes, part, tensor, rep, gram })
}

fn chartable_payload(table: &CharacterTable) -> Value {
    grouppoly::report::chartable_json(table)
}

fn chartable_text(table: &CharacterTable) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "character table, order {} with {} classes (exponent {})\n",
        table.order, table.n, table.m
    ));
    let mut header = String::from("  class:");
    for i in 0..table.n {
        header.push_str(&format!(" {:>10}", format!("c{}", i)));
    }
    out.push_str(&header);
    out.push('\n');
    let mut sizes = String::from("   size:");
    for i in 0..table.n {
        sizes.push_str(&format!(" {:>10}", table.class_sizes[i]));
    }
    out.push_str(&sizes);
    out.push('\n');
    for t in 0..table.n {
        let mut row = format!("  chi_{:<2}:", t);
        for i in 0..table.n {
            row.push_str(&format!(" {:>10}", cyc_text(&table.values[t][i])));
        }
        out.push_str(&row);
        out.push('\n');
    }
    out
}

/// Build the exact table, consulting the cache for the JSON rendering.
fn build_table_cached(
    g: &FiniteGroup,
    common: &CommonArgs,
) -> Result<(ClassData, CharacterTable, Value), Error> {
    let classes = conjugacy_classes(g);
    let part = build_partition(g, &classes, &PartitionKind::Trivial)?;
    let tensor = structure_constants(g, &classes, &part)?;
    let rep = regular_representation(&tensor, &part)?;
    let gram = gram_matrix(&rep)?;
    let table = lift_character_table(g, &classes, &part, &tensor, &rep, &gram)?;
    let cache = Cache::new(common.cache_dir.clone());
    let key = Cache::key(&g.canonical_bytes(), "trivial", "chartable");
    let payload = match cache.load(&key) {
        Some(p) => p,
        None => {
            let p = chartable_payload(&table);
            cache.store(&key, &p)?;
            p
        }
    };
    Ok((classes, table, payload))
}

// ---------------------------------------------------------------------------
// dispatch
// ---------------------------------------------------------------------------

fn dispatch(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Classes { group, common } => {
            let g = group.load()?;
            let cache = Cache::new(common.cache_dir.clone());
            let key = Cache::key(&g.canonical_bytes(), "-", "classes");
            let payload = match cache.load(&key) {
                Some(p) => p,
                None => {
                    let c = conjugacy_classes(&g);
                    let classes: Vec<Value> = (0..c.n_classes)
                        .map(|i| {
                            json!({
                                "rep": c.reps[i],
                                "size": c.sizes[i],
                                "element_order": c.rep_orders[i],
                                "inverse_class": c.inverse_class[i],
                                "class_of_powers": (0..c.rep_orders[i])
                                    .map(|j| c.power_class(&g, i, j))
                                    .collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    let p = json!({
                        "order": g.order(),
                        "exponent": exponent(&g),
                        "n_classes": c.n_classes,
                        "classes": classes,
                    });
                    cache.store(&key, &p)?;
                    p
                }
            };
            let mut text = format!(
                "group {} of order {} with {} classes, exponent {}\n",
                g.origin, g.order(), payload["n_classes"], payload["exponent"]
            );
            for (i, cl) in payload["classes"].as_array().unwrap().iter().enumerate() {
                text.push_str(&format!(
                    "  class {}: size {}, element order {}, inverse class {}\n",
                    i, cl["size"], cl["element_order"], cl["inverse_class"]
                ));
            }
            emit(&common, envelope("classes", common.seed, &g, payload), text);
            Ok(true)
        }
        Command::Partition { group, part, common } => {
            let g = group.load()?;
            let classes = conjugacy_classes(&g);
            let kind = PartitionKind::parse(&part.partition)?;
            // explicit block lists always go through the validator, and a
            // failing list is a reported verdict rather than an input error
            if let PartitionKind::Custom(blocks) = &kind {
                let validation = validate_good_partition(&g, &classes, blocks);
                if !validation.passed() {
                    let witness = [
                        &validation.inverse_closure,
                        &validation.product_closure,
                        &validation.identity_exists,
                    ]
                    .iter()
                    .find_map(|c| c.witness.clone())
                    .unwrap_or_default();
                    let payload = json!({
                        "kind": kind.tag(),
                        "validation": {
                            "inverse_closure": validation.inverse_closure.passed,
                            "product_closure": validation.product_closure.passed,
                            "identity_exists": validation.identity_exists.passed,
                            "witness": witness,
                        },
                    });
                    let text = format!(
                        "partition is NOT good: inverse closure {}, product closure {}, \
                         identity {}\n  witness: {}\n",
                        validation.inverse_closure.passed,
                        validation.product_closure.passed,
                        validation.identity_exists.passed,
                        witness
                    );
                    emit(&common, envelope("partition", common.seed, &g, payload), text);
                    return Ok(false);
                }
            }
            let built = build_partition(&g, &classes, &kind)?;
            let validation = validate_good_partition(&g, &classes, &built.blocks);
            let payload = json!({
                "kind": built.kind.tag(),
                "blocks": built.blocks,
                "sizes": built.sizes,
                "inverse_block": built.inverse_block,
                "identity_coeffs": rationals_json(&built.identity_coeffs),
                "covered_order": built.covered_order,
                "validation": {
                    "inverse_closure": validation.inverse_closure.passed,
                    "product_closure": validation.product_closure.passed,
                    "identity_exists": validation.identity_exists.passed,
                },
            });
            let mut text = format!(
                "partition {} with {} blocks, sizes {:?}\n",
                built.kind.tag(), built.n_blocks(), built.sizes
            );
            for (i, b) in built.blocks.iter().enumerate() {
                text.push_str(&format!("  block {}: classes {:?}\n", i, b));
            }
            text.push_str(&format!(
                "validation: inverse closure {}, product closure {}, identity {}\n",
                validation.inverse_closure.passed,
                validation.product_closure.passed,
                validation.identity_exists.passed
            ));
            let ok = validation.passed();
            emit(&common, envelope("partition", common.seed, &g, payload), text);
            Ok(ok)
        }
        Command::Structconst { group, part, common } => {
            let g = group.load()?;
            let s = full_stack(&g, &part.partition)?;
            let n = s.tensor.n;
            let entries: Vec<Value> = (0..n)
                .map(|l| {
                    Value::Array(
                        (0..n)
                            .map(|i| {
                                Value::Array(
                                    (0..n).map(|j| json!(s.tensor.at(l, i, j))).collect(),
                                )
                            })
                            .collect(),
                    )
                })
                .collect();
            let payload = json!({
                "partition": s.part.kind.tag(),
                "n": n,
                "a": entries,
            });
            let mut text = format!("structure constants a[l][i][j], n = {}\n", n);
            for l in 0..n {
                for i in 0..n {
                    let row: Vec<i64> = (0..n).map(|j| s.tensor.at(l, i, j)).collect();
                    text.push_str(&format!("  a[{}][{}] = {:?}\n", l, i, row));
                }
            }
            emit(&common, envelope("structconst", common.seed, &g, payload), text);
            Ok(true)
        }
        Command::Gram { group, part, common } => {
            let g = group.load()?;
            let s = full_stack(&g, &part.partition)?;
            let n = s.gram.n;
            let rows: Vec<Value> = (0..n)
                .map(|i| {
                    Value::Array(
                        (0..n)
                            .map(|j| Value::String(s.gram.p.at(i, j).to_string()))
                            .collect(),
                    )
                })
                .collect();
            let payload = json!({
                "partition": s.part.kind.tag(),
                "p": rows,
                "p_vec": bigints_json(&s.gram.p_vec),
                "det": s.gram.det.to_string(),
                "semisimple": s.gram.semisimple,
            });
            let mut text = format!("gram matrix ({} x {}):\n", n, n);
            for i in 0..n {
                let row: Vec<String> = (0..n).map(|j| s.gram.p.at(i, j).to_string()).collect();
                text.push_str(&format!("  [{}]\n", row.join(", ")));
            }
            text.push_str(&format!(
                "det = {} -> {}\n",
                s.gram.det,
                if s.gram.semisimple { "semisimple" } else { "NOT semisimple" }
            ));
            emit(&common, envelope("gram", common.seed, &g, payload), text);
            Ok(s.gram.semisimple)
        }
        Command::Charpoly { group, part, coeffs, common } => {
            let g = group.load()?;
            let s = full_stack(&g, &part.partition)?;
            let parsed: Vec<BigRational> = coeffs
                .split(',')
                .map(|t| {
                    BigRational::from_str(t.trim())
                        .map_err(|_| Error::Parse(format!("bad coefficient {:?}", t)))
                })
                .collect::<Result<_, _>>()?;
            if parsed.len() != s.part.n_blocks() {
                return Err(Error::Parse(format!(
                    "expected {} coefficients, got {}",
                    s.part.n_blocks(),
                    parsed.len()
                )));
            }
            let cp = char_poly_of_element(&s.rep, &parsed);
            let payload = json!({
                "partition": s.part.kind.tag(),
                "coeffs": rationals_json(&parsed),
                "charpoly": rationals_json(&cp),
            });
            let text = format!(
                "characteristic polynomial: {}\n",
                render_rational_poly(&cp, "x")
            );
            emit(&common, envelope("charpoly", common.seed, &g, payload), text);
            Ok(true)
        }
        Command::Casimir { group, part, common } => {
            let g = group.load()?;
            let s = full_stack(&g, &part.partition)?;
            let cas = casimir_matrix(&s.rep, &s.part);
            let n = s.part.n_blocks();
            let rows: Vec<Value> = (0..n)
                .map(|i| {
                    Value::Array(
                        (0..n)
                            .map(|j| Value::String(cas.matrix.at(i, j).to_string()))
                            .collect(),
                    )
                })
                .collect();
            let payload = json!({
                "partition": s.part.kind.tag(),
                "matrix": rows,
                "charpoly": rationals_json(&cas.charpoly),
            });
            let text = format!(
                "casimir characteristic polynomial: {}\n",
                render_rational_poly(&cas.charpoly, "x")
            );
            emit(&common, envelope("casimir", common.seed, &g, payload), text);
            Ok(true)
        }
        Command::Chartable { group, part, common } => {
            let g = group.load()?;
            let kind = PartitionKind::parse(&part.partition)?;
            let (_, table, payload) = build_table_cached(&g, &common)?;
            if kind == PartitionKind::Trivial {
                let text = chartable_text(&table);
                emit(&common, envelope("chartable", common.seed, &g, payload), text);
                return Ok(true);
            }
            let s = full_stack(&g, &part.partition)?;
            let pt = partition_character_table(&table, &s.part, &s.rep, &s.gram, &s.tensor, &g)?;
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
            let payload = json!({
                "partition": s.part.kind.tag(),
                "covered_order": pt.covered_order,
                "block_sizes": pt.block_sizes,
                "characters": characters,
            });
            let mut text = format!(
                "block-sum character table over partition {} ({} columns)\n",
                s.part.kind.tag(),
                pt.n
            );
            for t in 0..pt.n {
                let vals: Vec<String> = pt.values[t].iter().map(cyc_text).collect();
                text.push_str(&format!(
                    "  column {}: degree {}, multiplicity {}, values [{}]\n",
                    t, pt.degrees[t], pt.mults[t], vals.join(", ")
                ));
            }
            emit(&common, envelope("chartable", common.seed, &g, payload), text);
            Ok(true)
        }
        Command::Frobpoly { group, part, common } => {
            let g = group.load()?;
            let (_, table, _) = build_table_cached(&g, &common)?;
            let s = full_stack(&g, &part.partition)?;
            let pt = partition_character_table(&table, &s.part, &s.rep, &s.gram, &s.tensor, &g)?;
            let forms = frobenius_polynomial(&pt)?;
            let forms_json: Vec<Value> = (0..forms.forms.len())
                .map(|t| {
                    json!({
                        "coeffs": forms.forms[t].iter().map(cyc_json).collect::<Vec<_>>(),
                        "multiplicity": forms.mults[t],
                    })
                })
                .collect();
            let payload = json!({
                "partition": s.part.kind.tag(),
                "forms": forms_json,
            });
            let mut text = format!(
                "frobenius polynomial: product of {} linear forms\n",
                forms.forms.len()
            );
            for t in 0..forms.forms.len() {
                let coeffs: Vec<String> = forms.forms[t].iter().map(cyc_text).collect();
                text.push_str(&format!(
                    "  gamma_{} = [{}], multiplicity {}\n",
                    t, coeffs.join(", "), forms.mults[t]
                ));
            }
            emit(&common, envelope("frobpoly", common.seed, &g, payload), text);
            Ok(true)
        }
        Command::Degpoly { group, part, common } => {
            let g = group.load()?;
            let s = full_stack(&g, &part.partition)?;
            let (casimir_route, character_route) =
                degree_polynomial_both(&g, &s.rep, &s.part, &s.gram, &s.tensor)?;
            let payload = json!({
                "partition": s.part.kind.tag(),
                "coeffs": bigints_json(&casimir_route.coeffs),
                "roots": casimir_route.roots,
                "factored": casimir_route.render_factored(),
                "routes_agree": casimir_route.coeffs == character_route.coeffs,
            });
            let text = format!("{}\n", casimir_route.render_factored());
            emit(&common, envelope("degpoly", common.seed, &g, payload), text);
            Ok(true)
        }
        Command::Pprime { group, part, prime, common } => {
            let g = group.load()?;
            let s = full_stack(&g, &part.partition)?;
            let (dp, _) = degree_polynomial_both(&g, &s.rep, &s.part, &s.gram, &s.tensor)?;
            let pp = p_prime_part(&dp, prime);
            let payload = json!({
                "partition": s.part.kind.tag(),
                "degree_poly": dp.render_factored(),
                "p": pp.p,
                "stripped": pp.stripped,
                "reduced": pp.reduced,
                "rendered": pp.render(),
            });
            let text = format!("{}\n", pp.render());
            emit(&common, envelope("pprime", common.seed, &g, payload), text);
            Ok(true)
        }
        Command::Pijl { group, part, convention, brute, common } => {
            let g = group.load()?;
            let s = full_stack(&g, &part.partition)?;
            let conv = match convention.as_str() {
                "partition" => Convention::Partition,
                "ordinary" => Convention::Ordinary,
                other => return Err(Error::Parse(format!("unknown convention {:?}", other))),
            };
            let counts = commutator_counts(&s.part, &s.tensor, &s.rep, conv)?;
            let mut brute_match = None;
            if brute {
                if g.order() > 200 {
                    return Err(Error::Unsupported(
                        "brute-force cross-check is limited to order <= 200".into(),
                    ));
                }
                let b = brute_counts(&g, &s.classes, &s.part, conv, 3)?;
                brute_match = Some(counts.p1 == b.p1 && counts.p2 == b.p2 && counts.p3 == b.p3);
            }
            let n = counts.n;
            let p3_json: Vec<Value> = (0..n)
                .map(|i| Value::Array((0..n).map(|j| bigints_json(&counts.p3[i][j])).collect()))
                .collect();
            let payload = json!({
                "partition": s.part.kind.tag(),
                "convention": counts.convention.tag(),
                "trace_constant": counts.trace_constant.to_string(),
                "p1": bigints_json(&counts.p1),
                "p2": counts.p2.iter().map(|r| bigints_json(r)).collect::<Vec<_>>(),
                "p3": p3_json,
                "brute_match": brute_match,
            });
            let mut text = format!(
                "commutator counts ({} convention, trace constant {})\np1 = {:?}\n",
                counts.convention.tag(),
                counts.trace_constant,
                counts.p1.iter().map(|v| v.to_string()).collect::<Vec<_>>()
            );
            if let Some(ok) = brute_match {
                text.push_str(&format!("brute-force cross-check: {}\n", ok));
            }
            let ok = brute_match.unwrap_or(true);
            emit(&common, envelope("pijl", common.seed, &g, payload), text);
            Ok(ok)
        }
        Command::Reconstruct { group, part, common } => {
            let g = group.load()?;
            let (_, table, _) = build_table_cached(&g, &common)?;
            let s = full_stack(&g, &part.partition)?;
            let counts = commutator_counts(&s.part, &s.tensor, &s.rep, Convention::Partition)?;
            let recon = reconstruct_from_triples(&counts, &s.part, exponent(&g))?;
            let pt = partition_character_table(&table, &s.part, &s.rep, &s.gram, &s.tensor, &g)?;
            let forms = frobenius_polynomial(&pt)?;
            let direct = reduce_forms_at(&forms, recon.p, recon.zeta);
            let mut recovered: Vec<(Vec<u64>, u64)> = recon
                .columns
                .iter()
                .cloned()
                .zip(recon.d.iter().copied())
                .collect();
            recovered.sort();
            let matches = direct == recovered;
            let payload = json!({
                "partition": s.part.kind.tag(),
                "prime": recon.p,
                "columns": recon.columns,
                "d": recon.d,
                "matches_direct": matches,
            });
            let text = format!(
                "reconstruction from p_ijl at p = {}: {} columns, matches direct: {}\n",
                recon.p,
                recon.columns.len(),
                matches
            );
            emit(&common, envelope("reconstruct", common.seed, &g, payload), text);
            Ok(matches)
        }
        Command::Mckay { group, prime, subfield, common } => {
            let g = group.load()?;
            let ts = subfield.unwrap_or_else(|| vec![1]);
            let v = mckay_check(&g, prime, &ts, common.seed)?;
            let payload = json!({
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
            });
            let text = format!(
                "mckay p = {}: |G| = {}, |P| = {}, |N| = {}\n  D_G^p' = {}\n  D_N^p' = {}\n  equal: {}\n",
                prime,
                v.order,
                v.sylow_order,
                v.normalizer_order,
                v.side_g.pprime.render(),
                v.side_n.pprime.render(),
                v.equal
            );
            let equal = v.equal;
            emit(&common, envelope("mckay", common.seed, &g, payload), text);
            Ok(equal)
        }
        Command::MckayScan { group, corpus, subfield, common } => {
            let ts = subfield.unwrap_or_else(|| vec![1]);
            let specs: Vec<GroupSource> = if corpus {
                let mut v: Vec<String> = (2..=24).map(|n| format!("Zn:{}", n)).collect();
                v.extend(
                    ["Zn:2xZn:2", "Zn:6xZn:2", "D:8", "D:10", "D:12", "Q8", "Sn:3", "Sn:4",
                     "An:4", "An:5", "SL23", "Sn:5"]
                        .iter()
                        .map(|s| s.to_string()),
                );
                v.into_iter().map(GroupSource::Builtin).collect()
            } else {
                vec![group.source()?]
            };
            print_out("group,order,p,sylow_order,normalizer_order,equal,d_g_pprime,d_n_pprime\n");
            let mut all_equal = true;
            for src in specs {
                let g = load_group(&src, group.bound)?;
                let order = g.order() as u64;
                let mut rest = order;
                let mut primes = Vec::new();
                let mut d = 2u64;
                while d * d <= rest {
                    if rest % d == 0 {
                        primes.push(d);
                        while rest % d == 0 {
                            rest /= d;
                        }
                    }
                    d += 1;
                }
                if rest > 1 {
                    primes.push(rest);
                }
                for p in primes {
                    let v = mckay_check(&g, p, &ts, common.seed)?;
                    all_equal &= v.equal;
                    print_out(&format!(
                        "{},{},{},{},{},{},{},{}\n",
                        v.group.replace(',', ";"),
                        v.order,
                        v.p,
                        v.sylow_order,
                        v.normalizer_order,
                        v.equal,
                        v.side_g.pprime.render().replace(',', ";"),
                        v.side_n.pprime.render().replace(',', ";"),
                    ));
                }
            }
            Ok(all_equal)
        }
        Command::Mtable { group, prime, common } => {
            let g = group.load()?;
            let (_, table, _) = build_table_cached(&g, &common)?;
            let m = residue_degree_counts(&table, prime);
            let payload = json!({ "p": prime, "m_table": m });
            let mut text = format!("M_i table at p = {}\n", prime);
            for (i, c) in &m {
                text.push_str(&format!("  M_{} = {}\n", i, c));
            }
            emit(&common, envelope("mtable", common.seed, &g, payload), text);
            Ok(true)
        }
        Command::GaloisFixed { group, prime, residue, common } => {
            let g = group.load()?;
            let (_, table, _) = build_table_cached(&g, &common)?;
            let count = galois_fixed_counts(&table, residue, prime)?;
            let payload = json!({ "p": prime, "t": residue, "fixed": count });
            let text = format!(
                "sigma_{} fixes {} characters of p'-degree (p = {})\n",
                residue, count, prime
            );
            emit(&common, envelope("galois-fixed", common.seed, &g, payload), text);
            Ok(true)
        }
        Command::Fchars { group, subfield, common } => {
            let g = group.load()?;
            let (classes, table, _) = build_table_cached(&g, &common)?;
            let data = f_character_data(&table, &g, &classes, &subfield)?;
            let orbits: Vec<Value> = (0..data.orbits.len())
                .map(|i| {
                    json!({
                        "members": data.orbits[i],
                        "length": data.orbit_lengths[i],
                        "member_degree": data.member_degrees[i],
                        "values": data.values[i].iter().map(cyc_json).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let payload = json!({ "subfield": subfield, "orbits": orbits });
            let mut text = format!("{} Galois orbits\n", data.orbits.len());
            for i in 0..data.orbits.len() {
                let vals: Vec<String> = data.values[i].iter().map(cyc_text).collect();
                text.push_str(&format!(
                    "  orbit {:?} (length {}): values [{}]\n",
                    data.orbits[i],
                    data.orbit_lengths[i],
                    vals.join(", ")
                ));
            }
            emit(&common, envelope("fchars", common.seed, &g, payload), text);
            Ok(true)
        }
        Command::Lattice { group, common } => {
            let g = group.load()?;
            let s = full_stack(&g, "trivial")?;
            let lat = normal_subgroup_lattice(&s.tensor, &s.part)?;
            let nodes: Vec<Value> = lat
                .nodes
                .iter()
                .map(|(classes, size)| json!({ "classes": classes, "size": size }))
                .collect();
            let payload = json!({ "nodes": nodes, "edges": lat.edges });
            let mut text = format!("normal-subgroup lattice: {} nodes\n", lat.nodes.len());
            // indent by the longest chain below each node in the Hasse order
            let mut depth = vec![0usize; lat.nodes.len()];
            for _ in 0..lat.nodes.len() {
                for &(child, parent) in &lat.edges {
                    if depth[parent] < depth[child] + 1 {
                        depth[parent] = depth[child] + 1;
                    }
                }
            }
            for (i, (classes, size)) in lat.nodes.iter().enumerate() {
                text.push_str(&format!(
                    "{}node {}: size {}, classes {:?}\n",
                    "  ".repeat(depth[i].min(12)),
                    i,
                    size,
                    classes
                ));
            }
            emit(&common, envelope("lattice", common.seed, &g, payload), text);
            Ok(true)
        }
        Command::Compare { group, builtin2, cayley2, perms2, common } => {
            let g = group.load()?;
            let other_args = GroupArgs {
                builtin: builtin2,
                cayley: cayley2,
                perms: perms2,
                normalizer_of_sylow: None,
                bound: group.bound,
            };
            let h = other_args.load()?;
            let (_, table_g, _) = build_table_cached(&g, &common)?;
            let (_, table_h, _) = build_table_cached(&h, &common)?;
            let sg = full_stack(&g, "trivial")?;
            let sh = full_stack(&h, "trivial")?;
            let pt_g =
                partition_character_table(&table_g, &sg.part, &sg.rep, &sg.gram, &sg.tensor, &g)?;
            let pt_h =
                partition_character_table(&table_h, &sh.part, &sh.rep, &sh.gram, &sh.tensor, &h)?;
            let forms_g = frobenius_polynomial(&pt_g)?;
            let forms_h = frobenius_polynomial(&pt_h)?;
            let verdict = equal_by_permutation(
                &sg.tensor, &sg.part, &forms_g, &sh.tensor, &sh.part, &forms_h,
            )?;
            let payload = json!({
                "other": h.origin,
                "equal": verdict.equal,
                "witness": verdict.witness,
            });
            let text = match &verdict.witness {
                Some(sigma) => {
                    format!("frobenius polynomials are equal by the permutation {:?}\n", sigma)
                }
                None => "frobenius polynomials are not equal by any permutation\n".into(),
            };
            let equal = verdict.equal;
            emit(&common, envelope("compare", common.seed, &g, payload), text);
            Ok(equal)
        }
        Command::Detcheck { group, part, trials, common } => {
            let g = group.load()?;
            let (_, table, _) = build_table_cached(&g, &common)?;
            let s = full_stack(&g, &part.partition)?;
            let pt = partition_character_table(&table, &s.part, &s.rep, &s.gram, &s.tensor, &g)?;
            let forms = frobenius_polynomial(&pt)?;
            let report =
                group_determinant_check(&g, &s.classes, &s.part, &forms, trials, common.seed)?;
            let payload = json!({
                "partition": s.part.kind.tag(),
                "trials": report.trials,
                "seed": report.seed,
                "all_match": report.all_match,
                "mult_sum_matches": report.mult_sum_matches,
                "failures": report.failures,
            });
            let text = format!(
                "determinant check: {} trials, all match: {}, multiplicity sum matches: {}\n",
                report.trials, report.all_match, report.mult_sum_matches
            );
            let ok = report.all_match && report.mult_sum_matches;
            emit(&common, envelope("detcheck", common.seed, &g, payload), text);
            Ok(ok)
        }
        Command::VerifyAll { group, common } => {
            let g = group.load()?;
            let report = run_all(&g, common.seed);
            let items: Vec<Value> = report
                .items
                .iter()
                .map(|(name, ok, detail)| json!({ "check": name, "passed": ok, "detail": detail }))
                .collect();
            let payload = json!({ "passed": report.passed(), "checks": items });
            let mut text = String::new();
            for (name, ok, detail) in &report.items {
                if *ok {
                    text.push_str(&format!("PASS {}\n", name));
                } else {
                    text.push_str(&format!("FAIL {} ({})\n", name, detail));
                }
            }
            text.push_str(&format!(
                "verify-all: {}\n",
                if report.passed() { "all checks passed" } else { "FAILURES" }
            ));
            let ok = report.passed();
            emit(&common, envelope("verify-all", common.seed, &g, payload), text);
            Ok(ok)
        }
    }
}
