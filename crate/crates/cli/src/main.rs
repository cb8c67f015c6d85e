use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use meshcy::battery::{run_all, DEFAULT_SEED};
use meshcy::hilbert::{
    algebra_series, closed_form_series, cy2_check, finite_gk_check, CyPolynomial,
};
use meshcy::iso::{
    an_iso_decide, bn_iso_decide, classify_two_vertex, enumerate_cy2_matrices,
    two_param_iso_decide, GradedMap,
};
use meshcy::mesh::{construct_family, mesh_relations, Family, FamilyParams, MeshData};
use meshcy::scalar::Field;
use meshcy::{AlgebraElement, Error, MonomialOrder, Quiver, Rational, RewriteSystem};

#[derive(Parser)]
#[command(
    name = "meshcy",
    version,
    about = "Twisted graded Calabi-Yau algebras on quivers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family member and print its quiver, relations, or mesh.
    Construct {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value = "relations")]
        emit: Emit,
    },
    /// Degree-truncated completion; prints one rule per line.
    Gb {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        degree: DegreeArg,
        /// Arrow order, highest first, e.g. `c>b>d>a`.
        #[arg(long)]
        order: Option<String>,
    },
    /// Hilbert series from the algebra, then from p(t)^-1, as TSV blocks.
    Hilbert {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        degree: DegreeArg,
    },
    /// Compare the Hilbert series with p(t)^-1.
    CyCheck {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        degree: DegreeArg,
        #[command(flatten)]
        expect: ExpectArg,
    },
    /// Factor det p(t) and decide whether its roots lie on the unit circle.
    GkCheck {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        expect: ExpectArg,
    },
    /// Decide whether two members of a family are isomorphic.
    Iso {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        /// Also print the witness map.
        #[arg(long)]
        witness: bool,
        #[command(flatten)]
        expect: ExpectArg,
    },
    /// Identify a two-vertex mesh with a family member.
    Classify {
        #[arg(long)]
        mesh: PathBuf,
        /// Also print the map onto the family member.
        #[arg(long)]
        witness: bool,
    },
    /// List the admissible adjacency matrices and Nakayama permutations.
    Enumerate {
        #[arg(long, default_value_t = 2)]
        vertices: usize,
    },
    /// Run the acceptance battery.
    VerifyPaper {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Append running times; the output is then no longer reproducible.
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        expect: ExpectArg,
    },
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long)]
    family: Family,
    /// Number of vertices for A_n and B_n.
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated parameters; all ones when omitted.
    #[arg(long)]
    q: Option<String>,
}

#[derive(Args)]
struct InputArgs {
    #[arg(long, required_unless_present = "mesh", conflicts_with = "mesh")]
    family: Option<Family>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    q: Option<String>,
    /// A mesh file instead of a family.
    #[arg(long)]
    mesh: Option<PathBuf>,
}

#[derive(Args)]
struct DegreeArg {
    /// Truncation degree.
    #[arg(long, env = "MESHCY_DEGREE", default_value_t = 12)]
    degree: usize,
}

#[derive(Args)]
struct ExpectArg {
    /// Exit with status 1 on a negative answer.
    #[arg(long)]
    expect: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Quiver,
    Relations,
    Mesh,
}

/// Relations with the order they are completed under.
struct Presentation {
    quiver: Quiver,
    relations: Vec<AlgebraElement<Rational>>,
    order: MonomialOrder,
    cy: CyPolynomial,
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<(String, bool), Failure>;

fn parse_list(text: &str) -> Result<Vec<Rational>, Error> {
    text.split(',')
        .map(|s| Rational::parse_scalar(s.trim()))
        .collect()
}

fn family_params(
    family: Family,
    n: Option<usize>,
    q: Option<&str>,
) -> Result<FamilyParams<Rational>, Error> {
    let q = q.map(parse_list).transpose()?;
    let q = match (family, q) {
        (Family::J, None) => vec![],
        (Family::An | Family::Bn, None) => {
            let n = n.ok_or_else(|| Error::Parameter("--n or --q is required".into()))?;
            vec![Rational::one(); n]
        }
        (Family::An | Family::Bn, Some(q)) => {
            if n.is_some_and(|n| n != q.len()) {
                return Err(Error::Parameter(format!(
                    "--n does not match {} parameters",
                    q.len()
                )));
            }
            q
        }
        (_, None) => vec![Rational::one()],
        (_, Some(q)) => q,
    };
    FamilyParams::from_parts(family, q)
}

fn presentation(input: &InputArgs) -> Result<Presentation, Error> {
    if let Some(path) = &input.mesh {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        let mesh = MeshData::<Rational>::from_text(&text)?;
        return Ok(Presentation {
            relations: mesh_relations(&mesh)?,
            order: MonomialOrder::declaration(mesh.quiver()),
            cy: mesh.cy_polynomial(),
            quiver: mesh.quiver().clone(),
        });
    }
    let family = input.family.expect("clap requires --family or --mesh");
    let alg = construct_family(&family_params(family, input.n, input.q.as_deref())?)?;
    Ok(Presentation {
        cy: alg.cy_polynomial(),
        quiver: alg.quiver().clone(),
        relations: alg.relations,
        order: alg.order,
    })
}

fn system(p: &Presentation, degree: usize) -> Result<RewriteSystem<Rational>, Error> {
    RewriteSystem::complete(&p.quiver, &p.relations, p.order.clone(), degree)
}

fn construct(args: &FamilyArgs, emit: Emit) -> Outcome {
    let alg = construct_family(&family_params(args.family, args.n, args.q.as_deref())?)?;
    let out = match emit {
        Emit::Quiver => alg.quiver().to_text(),
        Emit::Mesh => alg.mesh.to_text(),
        Emit::Relations => {
            let mut s = String::new();
            for r in &alg.relations {
                let _ = writeln!(s, "{}", r.display(alg.quiver(), &alg.order));
            }
            s
        }
    };
    Ok((out, true))
}

fn gb(input: &InputArgs, degree: usize, order: Option<&str>) -> Outcome {
    let mut p = presentation(input)?;
    if let Some(spec) = order {
        p.order = MonomialOrder::parse(&p.quiver, spec)?;
    }
    let rs = system(&p, degree)?;
    for notice in rs.notices() {
        eprintln!("note: {notice}");
    }
    if rs.is_finite() {
        eprintln!(
            "complete: {} rules, no new rules beyond degree {degree}",
            rs.rule_count()
        );
    } else {
        eprintln!(
            "truncated: {} rules, confluent through degree {}",
            rs.rule_count(),
            rs.confluent_to()
        );
    }
    Ok((rs.to_string(), true))
}

fn hilbert(input: &InputArgs, degree: usize) -> Outcome {
    let p = presentation(input)?;
    let algebra = algebra_series(&system(&p, degree)?, degree)?;
    let closed = closed_form_series(&p.cy, degree);
    Ok((format!("{}\n{}", algebra.to_tsv(), closed.to_tsv()), true))
}

fn cy_check(input: &InputArgs, degree: usize) -> Outcome {
    let p = presentation(input)?;
    let report = cy2_check(&system(&p, degree)?, &p.cy, degree)?;
    Ok((format!("{report}\n"), report.holds()))
}

fn gk_check(input: &InputArgs) -> Outcome {
    let p = presentation(input)?;
    let report = finite_gk_check(&p.cy)?;
    let verdict = if report.finite() {
        "all roots on the unit circle: finite GK dimension"
    } else {
        "a root off the unit circle: infinite GK dimension"
    };
    Ok((format!("det p(t) = {report}\n{verdict}\n"), report.finite()))
}

fn witness_text<F: Field>(family: Family, p: &[F], map: &GradedMap<F>) -> Result<String, Error> {
    let params = FamilyParams::from_parts(family, p.to_vec())?;
    let q = construct_family(&params)?.mesh.quiver().clone();
    Ok(format!(
        "{}matrix: {}\n",
        map.describe(&q, &q),
        map.matrix_rows()
    ))
}

fn iso(family: Family, p: &str, q: &str, show: bool) -> Outcome {
    let (p, q) = (parse_list(p)?, parse_list(q)?);
    let verdict = match family {
        Family::An => an_iso_decide(&p, &q)?,
        Family::Bn => bn_iso_decide(&p, &q)?,
        Family::J => return Err(Error::Parameter("J has no parameters".into()).into()),
        _ => {
            if p.len() != 1 || q.len() != 1 {
                return Err(
                    Error::Parameter(format!("{} takes one parameter", family.name())).into(),
                );
            }
            two_param_iso_decide(family, &p[0], &q[0])?
        }
    };
    let mut out = format!("{verdict}\n");
    if let (true, Some(w)) = (show, &verdict.witness) {
        out.push_str(&witness_text(family, &p, w)?);
    }
    Ok((out, verdict.isomorphic))
}

fn classify(path: &PathBuf, show: bool) -> Outcome {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let mesh = MeshData::<Rational>::from_text(&text)?;
    let c = classify_two_vertex(&mesh)?;
    let mut out = format!("{c}\n");
    if show {
        let target = construct_family(&c.family_params())?;
        let _ = writeln!(
            out,
            "{}matrix: {}",
            c.witness.describe(mesh.quiver(), target.quiver()),
            c.witness.matrix_rows()
        );
    }
    Ok((out, true))
}

fn enumerate(vertices: usize) -> Outcome {
    if vertices != 2 {
        return Err(Error::OutOfScope("only two-vertex enumeration is implemented".into()).into());
    }
    let mut out = String::new();
    for case in enumerate_cy2_matrices()? {
        let p = case.p.cycles(|v| format!("e{}", v + 1));
        let _ = writeln!(
            out,
            "M={} P={}",
            case.m,
            if p.is_empty() { "()".into() } else { p }
        );
    }
    Ok((out, true))
}

fn verify_paper(seed: u64, timings: bool) -> Outcome {
    let mut reports = run_all(seed);
    reports.sort_by_key(|r| r.id);
    let mut out = String::new();
    for r in &reports {
        if timings {
            let _ = writeln!(out, "{r} [{:.2}s]", r.elapsed.as_secs_f64());
        } else {
            let _ = writeln!(out, "{r}");
        }
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    let _ = writeln!(out, "{passed}/{} criteria pass", reports.len());
    Ok((out, passed == reports.len()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (outcome, expect) = match &cli.command {
        Command::Construct { family, emit } => (construct(family, *emit), false),
        Command::Gb {
            input,
            degree,
            order,
        } => (gb(input, degree.degree, order.as_deref()), false),
        Command::Hilbert { input, degree } => (hilbert(input, degree.degree), false),
        Command::CyCheck {
            input,
            degree,
            expect,
        } => (cy_check(input, degree.degree), expect.expect),
        Command::GkCheck { input, expect } => (gk_check(input), expect.expect),
        Command::Iso {
            family,
            p,
            q,
            witness,
            expect,
        } => (iso(*family, p, q, *witness), expect.expect),
        Command::Classify { mesh, witness } => (classify(mesh, *witness), false),
        Command::Enumerate { vertices } => (enumerate(*vertices), false),
        Command::VerifyPaper {
            seed,
            timings,
            expect,
        } => (verify_paper(*seed, *timings), expect.expect),
    };
    match outcome {
        Ok((text, positive)) => {
            print!("{text}");
            if expect && !positive {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
