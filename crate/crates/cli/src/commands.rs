//! Command implementations behind the `hgw` binary.

use crate::config::{resolve, GlobalOpts, Resolved};
use crate::dsl::{self, Session};
use crate::report::{Report, FAILED, VERIFIED};
use clap::{Parser, Subcommand, ValueEnum};
use hgw_core::catalog::{build_bef_system, build_hef_system, build_hmn_system, CatalogSystem};
use hgw_core::findim::{
    build_smn_system, deform_both, deform_left, deform_right, pullback_cocycle, pi_morphism,
    build_function_algebra, build_group_algebra_h, resolve_convention, rmatrix,
    smn_nonzero_evidence, tensor_representation_check, ASTMatrix, GroupCocycle, PermGroup,
    TensorRepTarget,
};
use hgw_core::hg::{verify_system, Bialgebra, BicomoduleAlgebra, HopfGaloisSystem};
use hgw_core::ncalg::{
    AlgMorphism, Alphabet, NcPoly, Presentation, PresRef, ReductionContext, TensorElem, Word,
};
use hgw_core::scalar::Scalar;
use std::sync::Arc;

#[derive(Parser, Debug)]
#[command(
    name = "hgw",
    version,
    about = "Exact verification workbench for Hopf-Galois systems"
)]
pub struct Cli {
    #[command(flatten)]
    pub opts: GlobalOpts,
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DeformSide {
    Left,
    Right,
    Both,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Verify the axioms of a Hopf-Galois system.
    ///
    /// NAME is a session-declared system or one of the built-in
    /// families: prop24, bef, hef, hmn, hopf.
    CheckSystem {
        name: String,
        /// Cyclotomic order m for the AST matrix families
        #[arg(long)]
        m: Option<usize>,
        /// Matrix size n
        #[arg(long)]
        n: Option<usize>,
        /// AST exponents, `e12=1,e13=0,...` or a plain comma list
        #[arg(long)]
        p: Option<String>,
        /// Second AST matrix (defaults to p)
        #[arg(long)]
        q: Option<String>,
        /// Matrix E, e.g. `[1,0][0,1]`
        #[arg(long)]
        e: Option<String>,
        /// Matrix F
        #[arg(long)]
        f: Option<String>,
        /// Per-leg degree of Galois-map arguments (default min(2, D-1))
        #[arg(long)]
        galois_arg_deg: Option<usize>,
    },
    /// Check that a session-declared morphism is well defined.
    CheckMorphism { name: String },
    /// Build the R-matrix of an AST matrix, optionally checking its
    /// symmetry R_{ij}^{lk} = R_{kl}^{ji}.
    Rmatrix {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        check_symmetry: bool,
    },
    /// Verify the pulled-back lazy 2-cocycle on O(S_mn).
    Cocycle {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: Option<String>,
    },
    /// Deform O(S_mn) by the pulled-back cocycle and re-check the
    /// algebra (or bialgebra) axioms.
    Deform {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: Option<String>,
        #[arg(long, value_enum, default_value = "both")]
        side: DeformSide,
    },
    /// Represent O_{q,p}(S_mn) on deformed function algebras and
    /// certify that it is nonzero.
    Represent {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        q: Option<String>,
    },
    /// Build a catalog family and check its structure maps.
    Catalog {
        family: String,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        q: Option<String>,
        #[arg(long)]
        e: Option<String>,
        #[arg(long)]
        f: Option<String>,
    },
}

/// Runs a parsed invocation and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let session = match load_session(&cli.opts) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {}", e);
            return 1;
        }
    };
    let cfg = match resolve(&cli.opts, &session) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}", e);
            return 1;
        }
    };
    if let Some(threads) = cfg.parallel {
        if threads > 0 {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global();
        }
    }
    match dispatch(&cli.cmd, &session, &cfg) {
        Ok(report) => {
            println!("{}", report.render(cfg.report));
            report.exit_code()
        }
        Err(e) => {
            eprintln!("error: {}", e);
            1
        }
    }
}

fn load_session(opts: &GlobalOpts) -> Result<Session, String> {
    match &opts.session {
        None => Ok(Session::empty()),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("{}: {}", path.display(), e))?;
            dsl::parse_session(&text).map_err(|e| format!("{}: {}", path.display(), e))
        }
    }
}

fn dispatch(cmd: &Command, session: &Session, cfg: &Resolved) -> Result<Report, String> {
    match cmd {
        Command::CheckSystem {
            name,
            m,
            n,
            p,
            q,
            e,
            f,
            galois_arg_deg,
        } => check_system(
            session,
            cfg,
            name,
            &AstArgs {
                m: *m,
                n: *n,
                p: p.clone(),
                q: q.clone(),
                e: e.clone(),
                f: f.clone(),
            },
            *galois_arg_deg,
        ),
        Command::CheckMorphism { name } => check_morphism(session, cfg, name),
        Command::Rmatrix {
            m,
            n,
            p,
            check_symmetry,
        } => cmd_rmatrix(cfg, *m, *n, p.as_deref(), *check_symmetry),
        Command::Cocycle { m, n, p } => cmd_cocycle(cfg, *m, *n, p.as_deref()),
        Command::Deform { m, n, p, side } => cmd_deform(cfg, *m, *n, p.as_deref(), *side),
        Command::Represent { m, n, p, q } => {
            cmd_represent(cfg, *m, *n, p.as_deref(), q.as_deref())
        }
        Command::Catalog {
            family,
            m,
            n,
            p,
            q,
            e,
            f,
        } => cmd_catalog(
            session,
            cfg,
            family,
            &AstArgs {
                m: *m,
                n: *n,
                p: p.clone(),
                q: q.clone(),
                e: e.clone(),
                f: f.clone(),
            },
        ),
    }
}

struct AstArgs {
    m: Option<usize>,
    n: Option<usize>,
    p: Option<String>,
    q: Option<String>,
    e: Option<String>,
    f: Option<String>,
}

/// Parses `--p`: either `e12=1,e23=0` entries or the plain comma list
/// of the strict upper triangle in row order. Missing entries are 0.
fn parse_ast(text: Option<&str>, m: usize, n: usize) -> Result<ASTMatrix, String> {
    let count = n * (n - 1) / 2;
    let mut upper = vec![0i64; count];
    let text = match text {
        None => return Ok(ASTMatrix::from_upper_triangle(m as u32, n, &upper)),
        Some(t) => t.trim(),
    };
    if text.is_empty() {
        return Ok(ASTMatrix::from_upper_triangle(m as u32, n, &upper));
    }
    let index = |i: usize, j: usize| -> Result<usize, String> {
        if i < 1 || j <= i || j > n {
            return Err(format!("entry e{}{} is outside the strict upper triangle", i, j));
        }
        Ok((i - 1) * (2 * n - i) / 2 + (j - i - 1))
    };
    if text.contains('=') {
        for part in text.split(',') {
            let part = part.trim();
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| format!("bad AST entry `{}`", part))?;
            let key = key
                .trim()
                .strip_prefix('e')
                .ok_or_else(|| format!("bad AST entry `{}` (expected eIJ=V)", part))?;
            if key.len() != 2 {
                return Err(format!(
                    "bad AST entry `{}` (use the list form for sizes above 9)",
                    part
                ));
            }
            let digits: Vec<usize> = key
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| format!("bad AST entry `{}`", part))
                })
                .collect::<Result<_, _>>()?;
            let v: i64 = value
                .trim()
                .parse()
                .map_err(|_| format!("bad AST value `{}`", value))?;
            upper[index(digits[0], digits[1])?] = v;
        }
    } else {
        let values: Vec<i64> = text
            .split(',')
            .map(|s| s.trim().parse().map_err(|_| format!("bad AST value `{}`", s)))
            .collect::<Result<_, _>>()?;
        if values.len() != count {
            return Err(format!(
                "expected {} upper-triangle entries for n = {}, got {}",
                count,
                n,
                values.len()
            ));
        }
        upper = values;
    }
    Ok(ASTMatrix::from_upper_triangle(m as u32, n, &upper))
}

fn parse_matrix_flag(text: &Option<String>, key: &str, cfg: &Resolved) -> Result<hgw_core::catalog::FieldMatrix, String> {
    let text = text
        .as_deref()
        .ok_or_else(|| format!("this family needs --{}", key))?;
    dsl::parse_matrix(text, cfg.cyclotomic_order).map_err(|e| format!("--{}: {}", key, e))
}

/// The degenerate quadruple: the Laurent Hopf algebra k[g, g^-1] in
/// all four slots, with gamma = delta = Delta and S the antipode.
pub fn hopf_demo_system() -> HopfGaloisSystem {
    let alphabet = Alphabet::new(&["g", "gi"]);
    let mut relations = Vec::new();
    for pair in [[0u32, 1], [1, 0]] {
        let mut r = NcPoly::from_word(Word::from_letters(pair.to_vec()));
        r.add_term(Word::empty(), Scalar::int(-1));
        relations.push(r);
    }
    let pres: PresRef = Arc::new(Presentation::new("k[Z]", alphabet, relations));
    let grouplike = |g: u32| {
        let mut t = TensorElem::zero(vec![pres.clone(), pres.clone()]);
        t.add_term(vec![Word::gen(g), Word::gen(g)], Scalar::one());
        t
    };
    let comul = AlgMorphism::new(
        "Delta",
        pres.clone(),
        vec![pres.clone(), pres.clone()],
        vec![grouplike(0), grouplike(1)],
        false,
    );
    let unit = Presentation::unit();
    let counit = AlgMorphism::new(
        "eps",
        pres.clone(),
        vec![unit.clone()],
        vec![
            TensorElem::unit(vec![unit.clone()]),
            TensorElem::unit(vec![unit.clone()]),
        ],
        false,
    );
    let antipode = AlgMorphism::new(
        "S",
        pres.clone(),
        vec![pres.clone()],
        vec![
            TensorElem::from_poly(pres.clone(), &NcPoly::gen(1)),
            TensorElem::from_poly(pres.clone(), &NcPoly::gen(0)),
        ],
        true,
    );
    let h = Bialgebra::new(pres.clone(), comul.clone(), counit);
    HopfGaloisSystem::new(
        "hopf(k[Z])",
        h.clone(),
        h.clone(),
        BicomoduleAlgebra::new(pres.clone(), comul.clone(), comul.clone()),
        pres,
        comul.clone(),
        comul,
        antipode,
    )
}

fn build_builtin(
    name: &str,
    args: &AstArgs,
    cfg: &Resolved,
) -> Result<(HopfGaloisSystem, Vec<String>, Vec<String>), String> {
    let from_catalog =
        |c: CatalogSystem| -> (HopfGaloisSystem, Vec<String>, Vec<String>) {
            (c.system, c.assumptions, c.notes)
        };
    match name {
        "prop24" => {
            let m = args.m.unwrap_or(2);
            let n = args.n.unwrap_or(2);
            let p = parse_ast(args.p.as_deref(), m, n)?;
            let q = match &args.q {
                Some(q) => parse_ast(Some(q), m, n)?,
                None => p.clone(),
            };
            Ok((build_smn_system(&q, &p), Vec::new(), Vec::new()))
        }
        "bef" => Ok(from_catalog(build_bef_system(
            &parse_matrix_flag(&args.e, "e", cfg)?,
            &parse_matrix_flag(&args.f, "f", cfg)?,
        )?)),
        "hef" => Ok(from_catalog(build_hef_system(
            &parse_matrix_flag(&args.e, "e", cfg)?,
            &parse_matrix_flag(&args.f, "f", cfg)?,
        )?)),
        "hmn" => Ok(from_catalog(build_hmn_system(
            args.m.unwrap_or(2),
            args.n.unwrap_or(2),
            cfg.alpha_cap,
        )?)),
        "hopf" => Ok((hopf_demo_system(), Vec::new(), Vec::new())),
        other => Err(format!(
            "unknown system `{}`: not in the session and not a built-in family \
             (prop24, bef, hef, hmn, hopf)",
            other
        )),
    }
}

fn check_system(
    session: &Session,
    cfg: &Resolved,
    name: &str,
    args: &AstArgs,
    galois_arg_deg: Option<usize>,
) -> Result<Report, String> {
    let built;
    let (sys, assumptions, notes) = match session.system(name) {
        Some(ss) => (&ss.system, ss.assumptions.clone(), ss.notes.clone()),
        None => {
            built = build_builtin(name, args, cfg)?;
            (&built.0, built.1.clone(), built.2.clone())
        }
    };
    let garg = galois_arg_deg.or(if cfg.degree_cap >= 2 {
        Some(2.min(cfg.degree_cap - 1))
    } else {
        None
    });
    let ctx = ReductionContext::new(cfg.capacity_monomials);
    let core = verify_system(&ctx, sys, cfg.degree_cap, garg);
    let mut report = Report::new(format!("{}: check-system {}", session.name, sys.name));
    report.extend_from_core(&core, &assumptions);
    report.notes.extend(notes);
    Ok(report.finalize())
}

fn check_morphism(session: &Session, cfg: &Resolved, name: &str) -> Result<Report, String> {
    let m = session
        .morphism(name)
        .ok_or_else(|| format!("unknown morphism `{}`", name))?;
    let ctx = ReductionContext::new(cfg.capacity_monomials);
    let mut report = Report::new(format!("{}: check-morphism {}", session.name, name));
    for (check, verdict) in ctx.morphism_well_defined(m, cfg.degree_cap) {
        report.push_zero_verdict(check, &verdict, cfg.degree_cap, Vec::new());
    }
    Ok(report.finalize())
}

fn cmd_rmatrix(
    cfg: &Resolved,
    m: usize,
    n: usize,
    p: Option<&str>,
    check_symmetry: bool,
) -> Result<Report, String> {
    let p = parse_ast(p, m, n)?;
    let r = rmatrix(&p);
    let mut report = Report::new(format!("rmatrix m={} n={}", m, n));
    report.push(
        format!(
            "R-matrix on (mn)^2 = {} index pairs built",
            r.size() * r.size()
        ),
        VERIFIED,
        0,
        None,
        Vec::new(),
    );
    if check_symmetry {
        let ok = r.check_symmetry();
        report.push(
            "R_{ij}^{lk}(p) = R_{kl}^{ji}(p)",
            if ok { VERIFIED } else { FAILED },
            0,
            None,
            Vec::new(),
        );
    }
    let _ = cfg;
    Ok(report.finalize())
}

fn cmd_cocycle(cfg: &Resolved, m: usize, n: usize, p: Option<&str>) -> Result<Report, String> {
    let p = parse_ast(p, m, n)?;
    let mut report = Report::new(format!("cocycle m={} n={}", m, n));
    let convention = match resolve_convention(m as u32, n) {
        Ok(c) => c,
        Err(e) => {
            report.push("x_ij convention resolution", FAILED, 0, Some(e), Vec::new());
            return Ok(report.finalize());
        }
    };
    let g = PermGroup::symmetric(m * n);
    let func = build_function_algebra(&g);
    let h = build_group_algebra_h(m as u32, n);
    let pi = pi_morphism(&g, &h, convention);
    let pi_bad = pi.verify(&func, &g, &h);
    report.push(
        "pi: O(S_mn) -> kH is a bialgebra morphism",
        if pi_bad.is_empty() { VERIFIED } else { FAILED },
        0,
        pi_bad.first().cloned(),
        Vec::new(),
    );
    let sigma = pullback_cocycle(&pi, &h, &GroupCocycle::new(p), func.dim());
    let sigma_bad = sigma.verify(&func);
    report.push(
        "pulled-back sigma is a lazy 2-cocycle",
        if sigma_bad.is_empty() { VERIFIED } else { FAILED },
        0,
        sigma_bad.first().cloned(),
        Vec::new(),
    );
    let _ = cfg;
    Ok(report.finalize())
}

fn cmd_deform(
    cfg: &Resolved,
    m: usize,
    n: usize,
    p: Option<&str>,
    side: DeformSide,
) -> Result<Report, String> {
    let p = parse_ast(p, m, n)?;
    let convention = resolve_convention(m as u32, n)?;
    let g = PermGroup::symmetric(m * n);
    let func = build_function_algebra(&g);
    let h = build_group_algebra_h(m as u32, n);
    let pi = pi_morphism(&g, &h, convention);
    let sigma = pullback_cocycle(&pi, &h, &GroupCocycle::new(p), func.dim());
    let (what, outcome) = match side {
        DeformSide::Left => (
            "sigma-twisted algebra _sigma O(S_mn)",
            deform_left(&func, &sigma).map(|_| ()),
        ),
        DeformSide::Right => (
            "sigma-twisted algebra O(S_mn)_sigma",
            deform_right(&func, &sigma).map(|_| ()),
        ),
        DeformSide::Both => (
            "two-sided twist: bialgebra axioms",
            deform_both(&func, &sigma).map(|_| ()),
        ),
    };
    let mut report = Report::new(format!("deform m={} n={}", m, n));
    match outcome {
        Ok(()) => report.push(what, VERIFIED, 0, None, Vec::new()),
        Err(w) => report.push(what, FAILED, 0, Some(w), Vec::new()),
    }
    let _ = cfg;
    Ok(report.finalize())
}

fn cmd_represent(
    cfg: &Resolved,
    m: usize,
    n: usize,
    p: Option<&str>,
    q: Option<&str>,
) -> Result<Report, String> {
    let p = parse_ast(p, m, n)?;
    let q = match q {
        Some(q) => parse_ast(Some(q), m, n)?,
        None => p.clone(),
    };
    let convention = resolve_convention(m as u32, n)?;
    let sys = build_smn_system(&q, &p);
    let ev = smn_nonzero_evidence(&q, &p, convention);
    let target = TensorRepTarget {
        left: &ev.left,
        right: &ev.right,
        right_op: true,
    };
    let check = tensor_representation_check(&sys.z.pres, &ev.images, &target);
    let mut report = Report::new(format!("represent m={} n={}", m, n));
    report.push(
        "relations of O_{q,p}(S_mn) hold in the deformed representation",
        if check.verified() { VERIFIED } else { FAILED },
        0,
        check.failures.first().cloned(),
        Vec::new(),
    );
    report.push(
        "the representation is nonzero, so O_{q,p}(S_mn) != 0",
        if check.nonzero { VERIFIED } else { FAILED },
        0,
        None,
        Vec::new(),
    );
    let _ = cfg;
    Ok(report.finalize())
}

fn cmd_catalog(
    session: &Session,
    cfg: &Resolved,
    family: &str,
    args: &AstArgs,
) -> Result<Report, String> {
    let (sys, assumptions, notes) = build_builtin(family, args, cfg)?;
    let ctx = ReductionContext::new(cfg.capacity_monomials);
    let mut report = Report::new(format!("{}: catalog {}", session.name, family));
    report.push(
        format!("{} constructed", sys.name),
        VERIFIED,
        cfg.degree_cap,
        None,
        assumptions.clone(),
    );
    let maps: [(&str, &AlgMorphism); 9] = [
        ("Delta_A", &sys.a.comul),
        ("eps_A", &sys.a.counit),
        ("Delta_B", &sys.b.comul),
        ("eps_B", &sys.b.counit),
        ("alpha", &sys.z.alpha),
        ("beta", &sys.z.beta),
        ("gamma", &sys.gamma),
        ("delta", &sys.delta),
        ("S", &sys.s),
    ];
    for (label, map) in maps {
        for (check, verdict) in ctx.morphism_well_defined(map, cfg.degree_cap) {
            report.push_zero_verdict(
                format!("{} {}", label, check),
                &verdict,
                cfg.degree_cap,
                assumptions.clone(),
            );
        }
    }
    report.notes.extend(notes);
    Ok(report.finalize())
}
