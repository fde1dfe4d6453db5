//! Command-line verbs. Inputs are JSON files, reports are JSON on standard output or `--out`.
//!
//! Exit codes: 0 success or property holds, 1 property violated, 2 usage or input error,
//! 3 budget exceeded.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{validate_algebra, InvolutiveAlgebra};
use crate::budget::Budget;
use crate::double_arrow::{functor_f, functor_g, is_da_isometry, roundtrip_witness};
use crate::error::{Error, Result};
use crate::extension::{
    descent_sweep, extend_algebra, restriction_map_check, springer_descent_check, DescentReport, FieldExtension,
    RestrictionReport, ScalarExtension,
};
use crate::field::BaseField;
use crate::forms::{
    is_epsilon_hermitian, is_isometric_bruteforce, is_unimodular, left_adjoint, orthogonal_sum, right_adjoint,
    transform, FormFilter, SesquilinearSystem, Sign,
};
use crate::io::{self, report};
use crate::transfer::{
    endomorphism_ring, enumerate_h, induced_involution, transfer_form, verify_class_bijection, AmbientForm,
};
use crate::witt::{
    build_witt_table, cancellation_check, cancellation_sweep, hyperbolic_hermitian_standard, hyperbolic_sesquilinear,
    is_hyperbolic_bruteforce, WittClassTable,
};

#[derive(Debug, Parser)]
#[command(name = "sesqui", version, about = "Exact sesquilinear and hermitian forms over algebras with involution")]
pub struct Cli {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for parallel sweeps; output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Operation budget (default from SESQUI_BUDGET, else 10^7).
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FilterArg {
    All,
    Hermitian,
    Unimodular,
    UnimodularHermitian,
}

#[derive(Debug, Args)]
struct Epsilon {
    /// 1 for hermitian, -1 for skew-hermitian.
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    epsilon: i64,
}

#[derive(Debug, Args)]
struct ExtensionArgs {
    /// Extension descriptor file.
    #[arg(long, conflicts_with = "degree")]
    extension: Option<PathBuf>,
    /// Degree over a prime base, using the first irreducible modulus.
    #[arg(long)]
    degree: Option<u32>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the algebra axioms.
    ValidateAlgebra { algebra: PathBuf },
    /// Matrices of the left and right adjoints of every Gram matrix.
    Adjoints { form: PathBuf },
    /// Whether every Gram matrix is epsilon-hermitian.
    HermitianCheck {
        form: PathBuf,
        #[command(flatten)]
        eps: Epsilon,
    },
    /// Orthogonal sum of two systems.
    Sum { left: PathBuf, right: PathBuf },
    /// `P^* S P` for a module map file `{"matrix": P}`.
    Transform { form: PathBuf, map: PathBuf },
    /// Exhaustive isometry search; reports a witness `P` with `P^* S_right P = S_left`.
    Isometric { left: PathBuf, right: PathBuf },
    /// Hyperbolic form of a spec, or the standard unimodular one.
    Hyperbolic {
        #[arg(long, conflicts_with = "standard")]
        spec: Option<PathBuf>,
        /// Algebra file; builds `[[0, eps I], [I, 0]]` of rank `2 * rank`.
        #[arg(long)]
        standard: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        rank: usize,
        #[command(flatten)]
        eps: Epsilon,
    },
    /// Search for a hyperbolic structure.
    IsHyperbolic {
        form: PathBuf,
        /// Largest number of specs to try.
        #[arg(long, default_value_t = 1_000_000)]
        bound: u64,
    },
    /// Isometry and Witt classes up to a rank bound, with the sum law.
    WittTable {
        algebra: PathBuf,
        #[arg(long)]
        rank_bound: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, value_enum, default_value_t = FilterArg::UnimodularHermitian)]
        filter: FilterArg,
        #[command(flatten)]
        eps: Epsilon,
    },
    /// The double-arrow form of a system.
    FFunctor { form: PathBuf },
    /// The system of a hermitian double-arrow form.
    GFunctor { form: PathBuf },
    /// `G(F(s)) = s` for a system, or `h` isometric to `F(G(h))` for a double-arrow form.
    RoundtripCheck { input: PathBuf },
    /// Transfer `h` on `M^k` to a form over `End(M)` using `h0` on `M`.
    Transfer { h0: PathBuf, h: PathBuf },
    /// Symmetric units modulo `f ~ sigma(g) f g` of a finite algebra with involution.
    EnumerateH { algebra: PathBuf },
    /// Bijection between isometry classes over `q(V0)` and `H(~, E^x)`.
    #[command(name = "verify-5-1-2")]
    Verify512 { form: PathBuf },
    /// Extend an algebra or a system along a field extension.
    Extend { input: PathBuf, extension: PathBuf },
    /// Descent of isometry along an odd-degree extension.
    SpringerCheck {
        algebra: PathBuf,
        #[command(flatten)]
        ext: ExtensionArgs,
        #[arg(long)]
        rank_bound: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Run even degrees as a control sweep instead of rejecting them.
        #[arg(long)]
        allow_even: bool,
    },
    /// Injectivity on Witt data and the transfer/extension square.
    RestrictionCheck {
        algebra: PathBuf,
        #[command(flatten)]
        ext: ExtensionArgs,
        #[arg(long)]
        rank_bound: usize,
        #[arg(long, default_value_t = 1)]
        square_rank: usize,
        #[command(flatten)]
        eps: Epsilon,
    },
    /// `V' + V = V'' + V` implies `V' = V''`, for three systems or a sweep.
    CancellationCheck {
        /// `V'`, `V''`, `V`; omit with `--sweep`.
        forms: Vec<PathBuf>,
        /// Algebra file to sweep exhaustively.
        #[arg(long, conflicts_with = "forms")]
        sweep: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        max_rank: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
}

/// Parses arguments, runs the verb and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Some(n) = cli.threads {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let budget = cli.budget.map_or_else(Budget::from_env, Budget::new);
    match execute(&cli.command, &budget) {
        Ok((value, holds)) => match emit(&value, cli.out.as_deref()) {
            Ok(()) => {
                if holds {
                    0
                } else {
                    1
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                2
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetExceeded { .. } => 3,
                _ => 2,
            }
        }
    }
}

fn emit(value: &Value, out: Option<&Path>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn dir_of(p: &Path) -> Option<&Path> {
    p.parent()
}

fn load_form(p: &Path) -> Result<SesquilinearSystem> {
    io::form_from_json(&io::read_json(p)?, dir_of(p))
}

fn load_algebra(p: &Path) -> Result<Arc<InvolutiveAlgebra>> {
    Ok(Arc::new(io::algebra_from_json(&io::read_json(p)?)?))
}

fn sign(e: &Epsilon) -> Result<Sign> {
    Sign::from_int(e.epsilon)
}

fn is_da_form(v: &Value) -> bool {
    v.get("xi").is_some()
}

fn load_ambient_form(p: &Path) -> Result<AmbientForm> {
    let v = io::read_json(p)?;
    if is_da_form(&v) {
        Ok(AmbientForm::DoubleArrow(io::da_form_from_json(&v, dir_of(p))?))
    } else {
        Ok(AmbientForm::Module(io::form_from_json(&v, dir_of(p))?))
    }
}

fn extension_for(alg: &InvolutiveAlgebra, args: &ExtensionArgs) -> Result<FieldExtension> {
    match (&args.extension, args.degree) {
        (Some(p), _) => io::extension_from_json(&io::read_json(p)?),
        (None, Some(d)) => match alg.base_field() {
            BaseField::Finite(f) if f.degree() == 1 => FieldExtension::of_degree(f.characteristic(), d),
            _ => Err(Error::Unsupported("--degree needs a prime base field; pass --extension".into())),
        },
        (None, None) => Err(Error::Parse("pass --degree or --extension".into())),
    }
}

fn filter_for(f: FilterArg, eps: Sign) -> FormFilter {
    match f {
        FilterArg::All => FormFilter::All,
        FilterArg::Hermitian => FormFilter::Hermitian(eps),
        FilterArg::Unimodular => FormFilter::Unimodular,
        FilterArg::UnimodularHermitian => FormFilter::UnimodularHermitian(eps),
    }
}

fn filter_json(f: &FormFilter) -> Value {
    match f {
        FormFilter::All => json!({"kind": "all"}),
        FormFilter::Hermitian(e) => json!({"kind": "hermitian", "epsilon": e.value()}),
        FormFilter::Unimodular => json!({"kind": "unimodular"}),
        FormFilter::UnimodularHermitian(e) => json!({"kind": "unimodular_hermitian", "epsilon": e.value()}),
    }
}

fn witt_table_json(t: &WittClassTable, alg: &InvolutiveAlgebra) -> Value {
    json!({
        "rank_bound": t.rank_bound,
        "index_count": t.index_count,
        "filter": filter_json(&t.filter),
        "witt_class_count": t.witt_class_count,
        "sum_law_consistent": t.sum_law_consistent,
        "classes": t.classes.iter().map(|c| json!({
            "rank": c.rank,
            "grams": c.grams.iter().map(|g| io::matrix_to_json(alg, g)).collect::<Vec<_>>(),
            "is_hyperbolic": c.is_hyperbolic,
            "witt_class_id": c.witt_class_id,
        })).collect::<Vec<_>>(),
        "sum_law": t.sum_law,
    })
}

fn descent_json(r: &DescentReport, se: &ScalarExtension) -> Value {
    let target = se.target().as_ref();
    json!({
        "degree": r.degree,
        "rank_bound": r.rank_bound,
        "index_count": r.index_count,
        "classes": r.classes,
        "pairs_checked": r.pairs_checked,
        "collapses": r.collapses.iter().map(|c| json!({
            "left": io::grams_to_json(&c.left),
            "right": io::grams_to_json(&c.right),
            "witness": io::module_map_to_json(target, &c.witness),
        })).collect::<Vec<_>>(),
    })
}

fn restriction_json(r: &RestrictionReport) -> Value {
    let list = |v: &[SesquilinearSystem]| v.iter().map(io::grams_to_json).collect::<Vec<_>>();
    json!({
        "degree": r.degree,
        "rank_bound": r.rank_bound,
        "epsilon": r.epsilon.value(),
        "forms_checked": r.forms_checked,
        "injectivity_violations": list(&r.injectivity_violations),
        "hyperbolicity_not_preserved": list(&r.hyperbolicity_not_preserved),
        "sum_violations": r.sum_violations.iter().map(|(a, b)| json!([io::grams_to_json(a), io::grams_to_json(b)])).collect::<Vec<_>>(),
        "square": r.square.iter().map(|s| json!({
            "h0": io::grams_to_json(&s.h0),
            "h": io::grams_to_json(&s.h),
            "rings_agree": s.rings_agree,
            "commutes": s.commutes(),
        })).collect::<Vec<_>>(),
        "passed": r.passed(),
    })
}

/// The report and whether the checked property holds.
fn execute(cmd: &Command, budget: &Budget) -> Result<(Value, bool)> {
    Ok(match cmd {
        Command::ValidateAlgebra { algebra } => {
            let a = load_algebra(algebra)?;
            let r = validate_algebra(&a);
            (report("validate-algebra", json!({"passed": r.passed(), "violations": r.violations})), r.passed())
        }
        Command::Adjoints { form } => {
            let s = load_form(form)?;
            let a = s.algebra().as_ref();
            let mut entries = Vec::new();
            for i in 0..s.index_count() {
                entries.push(json!({
                    "left": io::matrix_to_json(a, &left_adjoint(&s, i)?.matrix),
                    "right": io::matrix_to_json(a, &right_adjoint(&s, i)?.matrix),
                }));
            }
            (report("adjoints", json!({"adjoints": entries})), true)
        }
        Command::HermitianCheck { form, eps } => {
            let s = load_form(form)?;
            let h = is_epsilon_hermitian(&s, sign(eps)?);
            let body = json!({"epsilon": eps.epsilon, "hermitian": h, "unimodular": is_unimodular(&s)});
            (report("hermitian-check", body), h)
        }
        Command::Sum { left, right } => {
            let s = orthogonal_sum(&load_form(left)?, &load_form(right)?)?;
            (report("sum", json!({"form": io::form_to_json(&s)})), true)
        }
        Command::Transform { form, map } => {
            let s = load_form(form)?;
            let p = io::module_map_from_json(s.algebra(), &io::read_json(map)?)?;
            (report("transform", json!({"form": io::form_to_json(&transform(&s, &p)?)})), true)
        }
        Command::Isometric { left, right } => {
            let (a, b) = (load_form(left)?, load_form(right)?);
            let w = is_isometric_bruteforce(&a, &b, budget)?;
            let body = json!({
                "isometric": w.is_some(),
                "verdict": if w.is_some() { "isometric" } else { "not isometric" },
                "witness": w.map(|p| io::module_map_to_json(a.algebra(), &p)),
            });
            (report("isometric", body), true)
        }
        Command::Hyperbolic { spec, standard, rank, eps } => {
            let s = match (spec, standard) {
                (Some(p), _) => hyperbolic_sesquilinear(&io::spec_from_json(&io::read_json(p)?, dir_of(p))?),
                (None, Some(p)) => hyperbolic_hermitian_standard(load_algebra(p)?, *rank, sign(eps)?),
                (None, None) => return Err(Error::Parse("pass --spec or --standard".into())),
            };
            (report("hyperbolic", json!({"form": io::form_to_json(&s)})), true)
        }
        Command::IsHyperbolic { form, bound } => {
            let s = load_form(form)?;
            let w = is_hyperbolic_bruteforce(&s, *bound, budget)?;
            let body = json!({
                "hyperbolic": w.is_some(),
                "witness": w.map(|w| json!({
                    "spec": io::spec_to_json(&w.spec),
                    "isometry": io::module_map_to_json(s.algebra(), &w.isometry),
                })),
            });
            (report("is-hyperbolic", body), true)
        }
        Command::WittTable { algebra, rank_bound, count, filter, eps } => {
            let a = load_algebra(algebra)?;
            let t = build_witt_table(&a, *rank_bound, *count, filter_for(*filter, sign(eps)?), budget)?;
            (report("witt-table", witt_table_json(&t, &a)), t.sum_law_consistent)
        }
        Command::FFunctor { form } => {
            let h = functor_f(&load_form(form)?);
            (report("f-functor", json!({"form": io::da_form_to_json(&h)})), true)
        }
        Command::GFunctor { form } => {
            let h = io::da_form_from_json(&io::read_json(form)?, dir_of(form))?;
            (report("g-functor", json!({"form": io::form_to_json(&functor_g(&h)?)})), true)
        }
        Command::RoundtripCheck { input } => {
            let v = io::read_json(input)?;
            if is_da_form(&v) {
                let h = io::da_form_from_json(&v, dir_of(input))?;
                let back = functor_f(&functor_g(&h)?);
                let w = roundtrip_witness(&h);
                let ok = is_da_isometry(&h, &back, &w)?;
                let a = h.object().algebra().as_ref();
                let body = json!({"kind": "double_arrow", "holds": ok, "witness": io::morphism_to_json(a, &w)});
                (report("roundtrip-check", body), ok)
            } else {
                let s = io::form_from_json(&v, dir_of(input))?;
                let ok = functor_g(&functor_f(&s))? == s;
                (report("roundtrip-check", json!({"kind": "system", "holds": ok})), ok)
            }
        }
        Command::Transfer { h0, h } => {
            let h0 = load_ambient_form(h0)?;
            let h = load_ambient_form(h)?;
            let ring = endomorphism_ring(&h0.ambient())?;
            let e = induced_involution(&ring, &h0)?;
            let (base_rank, rank) = match (&h0, &h) {
                (AmbientForm::Module(a), AmbientForm::Module(b)) => (a.rank(), b.rank()),
                (AmbientForm::DoubleArrow(a), AmbientForm::DoubleArrow(b)) => {
                    (a.object().source_rank(), b.object().source_rank())
                }
                _ => return Err(Error::Parse("h0 and h must both be systems or both double-arrow forms".into())),
            };
            if base_rank == 0 || rank % base_rank != 0 {
                return Err(Error::InvariantViolation("h does not live on a power of the object of h0".into()));
            }
            let eps = h.sign()?.times(e.epsilon0());
            let t = transfer_form(&e, rank / base_rank, &h)?;
            let body = json!({"epsilon": eps.value(), "endomorphism_dimension": ring.dimension(), "form": io::form_to_json(&t)});
            (report("transfer", body), true)
        }
        Command::EnumerateH { algebra } => {
            let a = load_algebra(algebra)?;
            let reps = enumerate_h(&a)?;
            let body = json!({
                "count": reps.len(),
                "representatives": reps.iter().map(|x| io::element_to_json(&a, x)).collect::<Vec<_>>(),
            });
            (report("enumerate-h", body), true)
        }
        Command::Verify512 { form } => {
            let s = load_form(form)?;
            let r = verify_class_bijection(&s, budget)?;
            let a = s.algebra().as_ref();
            let body = json!({
                "isometry_class_count": r.isometry_classes.len(),
                "h_class_count": r.h_classes.len(),
                "isometry_classes": r.isometry_classes.iter().map(io::grams_to_json).collect::<Vec<_>>(),
                "image": r.image,
                "well_defined": r.well_defined,
                "injective": r.injective,
                "surjective": r.surjective,
                "bijection": r.is_bijection(),
                "h_classes": r.h_classes.iter().map(|x| io::element_to_json(a, x)).collect::<Vec<_>>(),
            });
            (report("verify-5-1-2", body), r.is_bijection())
        }
        Command::Extend { input, extension } => {
            let v = io::read_json(input)?;
            let ext = io::extension_from_json(&io::read_json(extension)?)?;
            let body = if v.get("grams").is_some() || v.get("gram").is_some() {
                let s = io::form_from_json(&v, dir_of(input))?;
                json!({"form": io::form_to_json(&ScalarExtension::new(s.algebra().clone(), &ext)?.form(&s)?)})
            } else {
                json!({"algebra": io::algebra_to_json(&extend_algebra(&io::algebra_from_json(&v)?, &ext)?)})
            };
            (report("extend", body), true)
        }
        Command::SpringerCheck { algebra, ext, rank_bound, count, allow_even } => {
            let a = load_algebra(algebra)?;
            let e = extension_for(&a, ext)?;
            let se = ScalarExtension::new(a.clone(), &e)?;
            let r = if *allow_even {
                descent_sweep(&a, &e, *rank_bound, *count, budget)?
            } else {
                springer_descent_check(&a, &e, *rank_bound, *count, budget)?
            };
            (report("springer-check", descent_json(&r, &se)), r.collapses.is_empty())
        }
        Command::RestrictionCheck { algebra, ext, rank_bound, square_rank, eps } => {
            let a = load_algebra(algebra)?;
            let e = extension_for(&a, ext)?;
            let r = restriction_map_check(&a, &e, *rank_bound, sign(eps)?, *square_rank, budget)?;
            (report("restriction-check", restriction_json(&r)), r.passed())
        }
        Command::CancellationCheck { forms, sweep, max_rank, count } => match (sweep, forms.as_slice()) {
            (Some(p), _) => {
                let a = load_algebra(p)?;
                let r = cancellation_sweep(&a, *max_rank, *count, budget)?;
                let body = json!({
                    "max_rank": r.max_rank,
                    "index_count": r.index_count,
                    "triples_checked": r.triples_checked,
                    "premises_holding": r.premises_holding,
                    "counterexamples": r.counterexamples.iter().map(|t| json!(t.iter().map(|g| json!(g.iter().map(|m| io::matrix_to_json(&a, m)).collect::<Vec<_>>())).collect::<Vec<_>>())).collect::<Vec<_>>(),
                });
                (report("cancellation-check", body), r.counterexamples.is_empty())
            }
            (None, [v1, v2, v]) => {
                let r = cancellation_check(&load_form(v1)?, &load_form(v2)?, &load_form(v)?, budget)?;
                let body = json!({"premise": r.premise, "conclusion": r.conclusion, "consistent": r.consistent()});
                (report("cancellation-check", body), r.consistent())
            }
            _ => return Err(Error::Parse("pass three forms V' V'' V, or --sweep ALGEBRA".into())),
        },
    })
}
