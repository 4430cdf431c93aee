//! Argument parsing and the subcommands.

use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use csg_core::barhom::{
    coinvariant_complex, connes_oracle, homology_of_complex, moore_complex, positive_homology, BarFunctor, Variance,
};
use csg_core::csg::twisted::block_form;
use csg_core::csg::{duality, lambda_tilde, theta, AxiomConfig, Corruption, CsgInstance};
use csg_core::envelope::{env_compose, format_env, parse_env, Whiskered, F, F_inv};
use csg_core::field::Field;
use csg_core::gpar::{wreath_to_string, GroupOps};
use csg_core::ordmap::generator_string;
use csg_core::twalg::TwistedAlgebra;
use serde_json::{json, Value};

use crate::output::{Format, Output};
use crate::schema::{read_algebra, read_env, read_group, EnvSpec, LabelGroup};
use crate::with_algebra;

#[derive(Debug, Parser)]
#[command(name = "csg", version, about = "Crossed simplicial groups, twisted operads and bar-construction homology")]
pub struct Cli {
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// cyclic, dihedral, quaternionic, reflexive, symmetric, hyperoctahedral,
    /// twisted-symmetric, or `<family>-x-group`.
    #[arg(long)]
    pub family: String,
    /// Group JSON for twisted-symmetric and product families.
    #[arg(long)]
    pub group: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CorruptArg {
    InvertedParityBranch,
    PerturbedDualitySigma,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum VarianceArg {
    Covariant,
    Contravariant,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Variant {
    Hochschild,
    Positive,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the crossed simplicial group identities through a level.
    Axioms {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 3)]
        max_level: usize,
        /// Enumerate G_n exhaustively up to this order, sample above it.
        #[arg(long, default_value_t = 5000)]
        exhaustive_bound: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, value_enum)]
        corrupt: Option<CorruptArg>,
    },
    /// Compose two morphisms, `lhs ∘ rhs`. With `--family env` the operands
    /// are Env morphisms (files via --lhs/--rhs, or literals).
    Compose {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        lhs: Option<String>,
        #[arg(long)]
        rhs: Option<String>,
        operands: Vec<String>,
    },
    /// The permutation θ_g of an automorphism.
    Theta {
        #[command(flatten)]
        family: FamilyArgs,
        element: String,
    },
    /// The functor λ̃ into the twisted symmetric category of (G₀, λ₀).
    Lambda {
        #[command(flatten)]
        family: FamilyArgs,
        morphism: String,
    },
    /// The self-duality of the cyclic, dihedral and quaternionic categories.
    Duality {
        #[command(flatten)]
        family: FamilyArgs,
        morphism: String,
        #[arg(long, value_enum)]
        corrupt: Option<CorruptArg>,
    },
    /// Compose Env morphisms given as JSON files.
    EnvCompose {
        #[arg(long)]
        lhs: PathBuf,
        #[arg(long)]
        rhs: PathBuf,
    },
    /// The isomorphism F from the envelope to the whiskered category.
    Fiso {
        /// Env morphism JSON.
        #[arg(long, conflicts_with = "literal")]
        env: Option<PathBuf>,
        /// Env literal such as `(f; (2<1; a+, b-))`.
        literal: Option<String>,
    },
    /// Check the algebra laws and the twisted action.
    ValidateAlgebra {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// The matrix of a morphism under the bar construction.
    BarMatrix {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, value_enum, default_value_t = VarianceArg::Contravariant)]
        variance: VarianceArg,
        morphism: String,
    },
    /// Hochschild-type or positive homology through a degree.
    Homology {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, value_enum, default_value_t = Variant::Positive)]
        variant: Variant,
        /// The complex is built through this degree; H_0 … H_{N-1} are reported.
        #[arg(long)]
        max_degree: usize,
        /// Divide out degenerate tensors (Hochschild variant only).
        #[arg(long)]
        normalized: bool,
    },
    /// Cyclic homology from the (b, B) bicomplex.
    Oracle {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        max_degree: usize,
        /// Also compute positive homology over the cyclic instance and fail
        /// on disagreement.
        #[arg(long)]
        compare: bool,
    },
}

/// Parses `args` (program name first), runs, writes the result to `out` or
/// `--out`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let rendered = match o.render(cli.format) {
                Ok(r) => r,
                Err(e) => return fail(err, &e),
            };
            let written = match &cli.out {
                Some(p) => std::fs::write(p, &rendered).with_context(|| format!("cannot write {}", p.display())),
                None => out.write_all(rendered.as_bytes()).map_err(Into::into),
            };
            match written {
                Ok(()) if o.failed => 1,
                Ok(()) => 0,
                Err(e) => fail(err, &e),
            }
        }
        Err(e) => fail(err, &e),
    }
}

fn fail(err: &mut dyn Write, e: &anyhow::Error) -> i32 {
    let _ = writeln!(err, "error: {e:#}");
    2
}

fn instance(fa: &FamilyArgs) -> Result<CsgInstance> {
    let group = fa.group.as_deref().map(read_group).transpose()?;
    let name = fa.family.as_str();
    match (name, group) {
        ("twisted-symmetric", Some(g)) => Ok(CsgInstance::twisted_symmetric(g)),
        ("twisted-symmetric", None) => bail!("--family twisted-symmetric needs --group"),
        (_, Some(h)) => match name.strip_suffix("-x-group") {
            Some(inner) => Ok(CsgInstance::product_with_group(CsgInstance::from_name(inner)?, h)?),
            None => bail!("--group applies to twisted-symmetric and <family>-x-group only"),
        },
        (_, None) if name.ends_with("-x-group") => bail!("--family {name} needs --group"),
        (_, None) => Ok(CsgInstance::from_name(name)?),
    }
}

fn corruption(c: CorruptArg) -> Corruption {
    match c {
        CorruptArg::InvertedParityBranch => Corruption::InvertedParityBranch,
        CorruptArg::PerturbedDualitySigma => Corruption::PerturbedDualitySigma,
    }
}

fn execute(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Axioms { family, max_level, exhaustive_bound, samples, corrupt } => {
            let mut inst = instance(family)?;
            if let Some(c) = corrupt {
                inst = inst.with_corruption(corruption(*c));
            }
            let mut cfg = AxiomConfig::new(*max_level).seed(cli.seed);
            cfg.exhaustive_bound = *exhaustive_bound;
            cfg.samples = *samples;
            let rep = csg_core::csg::verify_axioms(&inst, &cfg);
            let mut table = vec![vec!["identity".to_string(), "checks".into(), "violations".into()]];
            for (id, n) in &rep.checks {
                table.push(vec![id.to_string(), n.to_string(), rep.counts.get(id).copied().unwrap_or(0).to_string()]);
            }
            let value = json!({
                "instance": inst.name(),
                "maxLevel": max_level,
                "seed": cli.seed,
                "checks": rep.checks,
                "violationCounts": rep.counts,
                "violations": rep.violations.iter().map(|v| json!({"identity": v.identity, "witness": v.witness})).collect::<Vec<_>>(),
                "sampledLevels": rep.sampled_levels,
                "reducedLevels": rep.reduced_levels,
            });
            Ok(Output::new(value, table).failed(!rep.is_empty()))
        }
        Command::Compose { family, lhs, rhs, operands } => {
            let (l, r) = match (lhs, rhs, operands.as_slice()) {
                (Some(l), Some(r), []) => (l.clone(), r.clone()),
                (None, None, [l, r]) => (l.clone(), r.clone()),
                _ => bail!("compose takes --lhs and --rhs, or two operands"),
            };
            if family.family == "env" {
                let from_files = lhs.is_some();
                return env_compose_cmd(&l, &r, from_files);
            }
            let inst = instance(family)?;
            let f2 = inst.parse_morphism(&l)?;
            let f1 = inst.parse_morphism(&r)?;
            let c = inst.compose(&f2, &f1)?;
            Ok(Output::flat(json!({
                "instance": inst.name(),
                "lhs": inst.fmt_morphism(&f2),
                "rhs": inst.fmt_morphism(&f1),
                "composite": inst.fmt_morphism(&c),
                "map": c.ord.to_string(),
            })))
        }
        Command::Theta { family, element } => {
            let inst = instance(family)?;
            let g = csg_core::csg::literal::parse_elem(&inst, element)?;
            let p = theta(&inst, &g);
            Ok(Output::flat(json!({
                "instance": inst.name(),
                "element": inst.fmt_elem(&g),
                "theta": p.images(),
                "sign": p.sign(),
            })))
        }
        Command::Lambda { family, morphism } => {
            let inst = instance(family)?;
            let f = inst.parse_morphism(morphism)?;
            let k = csg_core::csg::canonical_parity(&inst);
            let t = lambda_tilde(&inst, &f);
            let labels: Vec<&str> = t.g.labels.iter().map(|l| k.name(*l)).collect();
            Ok(Output::flat(json!({
                "instance": inst.name(),
                "morphism": inst.fmt_morphism(&f),
                "map": t.ord.to_string(),
                "generators": generator_string(&t.ord),
                "labels": labels,
                "perm": t.g.perm.images(),
                "wreath": wreath_to_string(&t.g, |l| k.name(*l).to_string()),
            })))
        }
        Command::Duality { family, morphism, corrupt } => {
            let mut inst = instance(family)?;
            if let Some(c) = corrupt {
                inst = inst.with_corruption(corruption(*c));
            }
            let f = inst.parse_morphism(morphism)?;
            let d = duality(&inst, &f)?;
            Ok(Output::flat(json!({
                "instance": inst.name(),
                "morphism": inst.fmt_morphism(&f),
                "dual": inst.fmt_morphism(&d),
            })))
        }
        Command::EnvCompose { lhs, rhs } => {
            env_compose_cmd(&lhs.to_string_lossy(), &rhs.to_string_lossy(), true)
        }
        Command::Fiso { env, literal } => {
            let spec = match (env, literal) {
                (Some(p), None) => read_env(p)?,
                (None, Some(l)) => EnvSpec { name: String::new(), group: None, fibers: None, literal: Some(l.clone()) },
                _ => bail!("fiso takes --env FILE or one literal"),
            };
            let mut grp = LabelGroup::for_specs(&[&spec])?;
            let (name, f) = parse_env(&spec.literal()?, |t| grp.parse(t))?;
            let w = F(&f);
            let back = F_inv(&w);
            let round_trip = back == f;
            let show = |ls: &[crate::schema::Label]| ls.iter().map(|l| grp.render(l)).collect::<Vec<_>>();
            let value = match &w {
                Whiskered::FromEmpty { dst } => json!({
                    "env": format_env(&name, &f, |l| grp.render(l)),
                    "map": Value::Null,
                    "target": dst,
                    "sigma": [],
                    "labels": [],
                    "roundTrip": round_trip,
                }),
                Whiskered::Map(t) => {
                    let (sigma, labels) = block_form(&t.g);
                    json!({
                        "env": format_env(&name, &f, |l| grp.render(l)),
                        "map": t.ord.to_string(),
                        "target": t.dst(),
                        "sigma": sigma.images(),
                        "labels": show(&labels),
                        "roundTrip": round_trip,
                    })
                }
            };
            Ok(Output::flat(value).failed(!round_trip))
        }
        Command::ValidateAlgebra { algebra } => {
            let a = read_algebra(algebra)?;
            with_algebra!(&a, alg => validate_cmd(alg))
        }
        Command::BarMatrix { family, algebra, variance, morphism } => {
            let inst = instance(family)?;
            let a = read_algebra(algebra)?;
            let v = match variance {
                VarianceArg::Covariant => Variance::Covariant,
                VarianceArg::Contravariant => Variance::Contravariant,
            };
            with_algebra!(a, alg => bar_matrix_cmd(&inst, alg, v, morphism))
        }
        Command::Homology { family, algebra, variant, max_degree, normalized } => {
            let inst = instance(family)?;
            let a = read_algebra(algebra)?;
            with_algebra!(&a, alg => homology_cmd(&inst, alg, *variant, *max_degree, *normalized))
        }
        Command::Oracle { algebra, max_degree, compare } => {
            let a = read_algebra(algebra)?;
            with_algebra!(&a, alg => oracle_cmd(alg, *max_degree, *compare))
        }
    }
}

fn env_compose_cmd(lhs: &str, rhs: &str, from_files: bool) -> Result<Output> {
    let load = |s: &str| -> Result<EnvSpec> {
        if from_files {
            read_env(std::path::Path::new(s))
        } else {
            Ok(EnvSpec { name: String::new(), group: None, fibers: None, literal: Some(s.to_string()) })
        }
    };
    let (l, r) = (load(lhs)?, load(rhs)?);
    let mut grp = LabelGroup::for_specs(&[&l, &r])?;
    // the right operand first, so symbolic generators are declared in
    // reading order of the composite
    let (rn, f1) = parse_env(&r.literal()?, |t| grp.parse(t))?;
    let (ln, f2) = parse_env(&l.literal()?, |t| grp.parse(t))?;
    let c = env_compose(&grp, &f2, &f1)?;
    let name = if ln.is_empty() || rn.is_empty() { String::new() } else { format!("{ln}∘{rn}") };
    Ok(Output::flat(json!({
        "lhs": format_env(&ln, &f2, |x| grp.render(x)),
        "rhs": format_env(&rn, &f1, |x| grp.render(x)),
        "composite": format_env(&name, &c, |x| grp.render(x)),
    })))
}

fn validate_cmd<F: Field>(a: &TwistedAlgebra<F>) -> Result<Output> {
    let rep = a.validate();
    let g = a.group();
    let mut table = vec![vec!["law".to_string(), "witness".into()]];
    for v in &rep.violations {
        table.push(vec![v.law.to_string(), v.witness.clone()]);
    }
    let value = json!({
        "field": a.field().name(),
        "dim": a.dim(),
        "groupOrder": g.order(),
        "oddElements": g.elements().filter(|x| g.is_odd(x)).map(|x| g.name(x).to_string()).collect::<Vec<_>>(),
        "checks": rep.checks,
        "violations": rep.violations.iter().map(|v| json!({"law": v.law, "witness": v.witness})).collect::<Vec<_>>(),
    });
    Ok(Output::new(value, table).failed(!rep.is_empty()))
}

fn matrix_rows<F: Field>(f: &F, m: &csg_core::field::Matrix<F::Elem>) -> Vec<Vec<String>> {
    m.to_dense(f).iter().map(|r| r.iter().map(|x| f.format(x)).collect()).collect()
}

fn bar_matrix_cmd<F: Field>(inst: &CsgInstance, a: TwistedAlgebra<F>, v: Variance, morphism: &str) -> Result<Output> {
    let f = a.field().clone();
    let b = BarFunctor::new(inst.clone(), a, v)?;
    let m = inst.parse_morphism(morphism)?;
    let mat = b.bar_matrix(&m)?;
    let rows = matrix_rows(&f, &mat);
    let value = json!({
        "instance": inst.name(),
        "morphism": inst.fmt_morphism(&m),
        "variance": match v { Variance::Covariant => "covariant", Variance::Contravariant => "contravariant" },
        "field": f.name(),
        "rows": mat.rows(),
        "cols": mat.cols(),
        "entries": rows,
    });
    Ok(Output::new(value, rows))
}

fn homology_cmd<F: Field>(
    inst: &CsgInstance,
    a: &TwistedAlgebra<F>,
    variant: Variant,
    degrees: usize,
    normalized: bool,
) -> Result<Output> {
    if degrees == 0 {
        bail!("--max-degree must be at least 1");
    }
    let c = match variant {
        Variant::Hochschild => {
            let b = BarFunctor::new(inst.clone(), a.clone(), Variance::Contravariant)?;
            moore_complex(&b, degrees, normalized)?
        }
        Variant::Positive if normalized => bail!("--normalized applies to the Hochschild variant"),
        Variant::Positive => coinvariant_complex(inst, a, degrees)?,
    };
    let mut dims = homology_of_complex(&c);
    dims.truncate(degrees);
    let complex_dims = c.dims().to_vec();
    let mut table = vec![vec!["degree".to_string(), "dim".into(), "complexDim".into()]];
    for (n, d) in dims.iter().enumerate() {
        table.push(vec![n.to_string(), d.to_string(), complex_dims[n].to_string()]);
    }
    let value = json!({
        "dims": dims,
        "complexDims": complex_dims,
        "field": a.field().name(),
        "instance": inst.name(),
    });
    Ok(Output::new(value, table))
}

fn oracle_cmd<F: Field>(a: &TwistedAlgebra<F>, degrees: usize, compare: bool) -> Result<Output> {
    let dims = connes_oracle(a, degrees)?;
    let mut table = vec![vec!["degree".to_string(), "dim".into()]];
    let positive = if compare {
        let inst = CsgInstance::cyclic();
        if !a.group().same_structure(&csg_core::csg::canonical_parity(&inst)) {
            // the cyclic instance has trivial G₀; drop the action
            let plain = a.forget_action();
            Some(positive_homology(&inst, &plain, degrees)?)
        } else {
            Some(positive_homology(&inst, a, degrees)?)
        }
    } else {
        None
    };
    if positive.is_some() {
        table[0].push("positive".into());
    }
    for (n, d) in dims.iter().enumerate() {
        let mut row = vec![n.to_string(), d.to_string()];
        if let Some(p) = &positive {
            row.push(p[n].to_string());
        }
        table.push(row);
    }
    let agree = positive.as_ref().map(|p| *p == dims);
    let mut value = json!({"dims": dims, "field": a.field().name()});
    if let (Some(p), Some(ok)) = (&positive, agree) {
        value["positive"] = json!(p);
        value["agree"] = json!(ok);
    }
    Ok(Output::new(value, table).failed(agree == Some(false)))
}
