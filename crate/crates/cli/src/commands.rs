use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use twist_core::cover::{branched_cover_homology_from_monodromy, compatible_cyclic_homs, twisted_invariants};
use twist_core::exactla::Matrix;
use twist_core::fixtures::{Fixture, Payload};
use twist_core::freegrp::FreeEndo;
use twist_core::grouphom::{verify_homomorphism, FiniteGroup, FiniteHom, Permutations};
use twist_core::obstruction::{evaluate_fibred_obstruction, Verdict};
use twist_core::random::{random_automorphism, random_seifert};
use twist_core::seifert::{
    alexander_polynomial, character_jump, monodromy_power_presentation, resultant_order_check, resultant_sweep,
};
use twist_core::text::{
    parse_hom, parse_inline_hom, parse_lambda_matrix, parse_monodromy, parse_presentation, parse_seifert, NamedEndo,
    NamedPresentation, TargetHom,
};
use twist_core::{LambdaMatrix, LaurentPoly, Report, Seifert, Twisted};

use crate::output::{int, int_matrix, Output};
use crate::CliError;

type Result<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// The input named on the command line: a file or a built-in fixture.
pub enum Source {
    File(PathBuf),
    Fixture(String),
}

impl Source {
    fn fixture(name: &str) -> Result<Payload<BigInt>> {
        Ok(name.parse::<Fixture>()?.load()?)
    }

    fn monodromy(&self) -> Result<NamedEndo> {
        match self {
            Source::File(p) => Ok(parse_monodromy(&read(p)?)?),
            Source::Fixture(name) => match Source::fixture(name)? {
                Payload::Monodromy(m) => Ok(m),
                _ => Err(CliError::Usage(format!("fixture `{name}` is not a monodromy"))),
            },
        }
    }

    fn seifert(&self) -> Result<Seifert> {
        match self {
            Source::File(p) => Ok(parse_seifert(&read(p)?)?),
            Source::Fixture(name) => match Source::fixture(name)? {
                Payload::Seifert(s) => Ok(s),
                _ => Err(CliError::Usage(format!("fixture `{name}` is not a Seifert matrix"))),
            },
        }
    }
}

fn check_d(d: u32, min: u32) -> Result<()> {
    if d < min {
        return Err(CliError::Usage(format!("--d must be at least {min}")));
    }
    Ok(())
}

pub fn monodromy(source: &Source, d: u32, alpha: &str, max_minors: u128) -> Result<Output> {
    check_d(d, 1)?;
    let m = source.monodromy()?;
    let hom = if alpha.starts_with("Z/") && alpha.contains(':') {
        parse_inline_hom(alpha, &m.names)?
    } else {
        parse_hom(&read(Path::new(alpha))?, &m.names)?
    };
    let inv: Twisted = match &hom {
        TargetHom::Cyclic(h) => twisted_invariants(&m.endo, d, h)?,
        TargetHom::Permutation(h) => twisted_invariants(&m.endo, d, h)?,
    };
    let branched = branched_cover_homology_from_monodromy::<BigInt>(&m.endo, d)?;
    let report: Report = evaluate_fibred_obstruction(&inv.presentation, max_minors);

    let names = m.names.as_slice();
    let images = hom.formatted_images();
    let assignment: Vec<String> = names.iter().zip(&images).map(|(n, v)| format!("{n} = {v}")).collect();
    let det_h = inv.h_matrix.det();
    let mut out = Output::new("monodromy");
    out.field("generators", names.to_vec())
        .field("d", d)
        .field("target", hom.target_name())
        .field("alpha", Value::Object(names.iter().cloned().zip(images.iter().cloned().map(Value::from)).collect()))
        .field("group_order", inv.group_order)
        .field("h1_rank", inv.h_matrix.rows())
        .field("h", int_matrix(&inv.h_matrix))
        .field("det_h", int(&det_h))
        .field("delta", inv.delta.to_string())
        .field("branched_h1", branched.to_string());
    out.line(format!("generators: {}", names.join(" ")))
        .line(format!("d = {d}"))
        .line(format!("alpha: {} ({})", hom.target_name(), assignment.join(", ")))
        .line(format!("|G| = {}", inv.group_order))
        .line(format!("H1 rank = {}", inv.h_matrix.rows()))
        .line(format!("H = {}", inv.h_matrix))
        .line(format!("det H = {det_h}"))
        .line(format!("delta = {}", inv.delta))
        .line(format!("branched H1 = {branched}"));
    verdict_lines(&mut out, &report);
    Ok(out)
}

fn verdict_lines(out: &mut Output, r: &Report) {
    out.field("torsion", r.torsion.as_str())
        .field("principal", r.principal.as_str())
        .field("monic", r.monic.as_str())
        .field("verdict", r.verdict.as_str())
        .field("reasons", r.reasons.clone());
    out.line(format!("torsion = {}; principal = {}; monic = {}", r.torsion, r.principal, r.monic))
        .line(format!("verdict = {}", r.verdict));
    for reason in &r.reasons {
        out.line(format!("reason: {reason}"));
    }
}

pub struct SeifertArgs {
    pub d: Option<u32>,
    pub r: Option<u64>,
    pub n: Option<u32>,
    pub sweep: Option<u32>,
}

pub fn seifert(source: &Source, args: &SeifertArgs) -> Result<Output> {
    let s = source.seifert()?;
    let delta = alexander_polynomial(&s);
    let mut out = Output::new("seifert");
    out.field("size", s.size())
        .field("s", int_matrix(s.matrix()))
        .field("alexander", delta.as_poly().display_with('t').to_string());
    out.line(format!("S = {s}")).line(format!("alexander = {}", delta.as_poly().display_with('t')));

    if let Some(d) = args.d {
        check_d(d, 2)?;
        let c = resultant_order_check(&s, d)?;
        out.field("d", d)
            .field("h1", c.homology.to_string())
            .field("snf_order", int(&c.snf_order))
            .field("resultant", int(&c.resultant))
            .field("agree", c.agree);
        out.line(format!("H1 = {}; resultant = {}; agree = {}", c.homology, c.resultant, c.agree));
        if let Some(r) = args.r {
            if r < 2 {
                return Err(CliError::Usage("--r must be at least 2".into()));
            }
            match character_jump(&s, d, r)? {
                None => {
                    out.field("character", Value::Null);
                    out.line(format!("character onto Z/{r}: none"));
                }
                Some(cj) => {
                    out.field("character", cj.character.clone());
                    let chi = cj.character.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
                    out.line(format!("character onto Z/{r}: {chi}"));
                    match cj.jump {
                        Some(j) => {
                            out.field(
                                "jump",
                                json!({"i": j.i, "j": j.j, "difference": j.difference, "order": j.order}),
                            );
                            out.line(format!(
                                "jump at (i, j) = ({}, {}); difference = {}; order = {}",
                                j.i, j.j, j.difference, j.order
                            ));
                        }
                        None => {
                            out.field("jump", Value::Null);
                            out.line("jump: none");
                        }
                    }
                }
            }
        }
    } else if args.r.is_some() {
        return Err(CliError::Usage("--r needs --d".into()));
    }

    if let Some(n) = args.n {
        if n == 0 {
            return Err(CliError::Usage("--n must be at least 1".into()));
        }
        let p = monodromy_power_presentation(&s, n)?;
        out.field("n", n).field("h", int_matrix(&p.h)).field("det_h_n_minus_i", int(&p.det));
        out.line(format!("H = {}", p.h)).line(format!("det(H^{n} - I) = {}", p.det));
    }

    if let Some(dmax) = args.sweep {
        sweep_lines(&mut out, &resultant_sweep(&s, dmax)?);
    }
    Ok(out)
}

fn sweep_lines(out: &mut Output, rows: &[(u32, BigInt)]) {
    out.field("resultants", rows.iter().map(|(d, r)| json!({"d": d, "value": int(r)})).collect::<Vec<_>>());
    for (d, r) in rows {
        out.line(format!("R_{d} = {r}"));
    }
}

pub fn resultant(poly: Option<&str>, source: Option<&Source>, d: Option<u32>, sweep: Option<u32>) -> Result<Output> {
    let delta: LaurentPoly = match (poly, source) {
        (Some(p), _) => p.parse()?,
        (None, Some(src)) => alexander_polynomial(&src.seifert()?).into_poly(),
        (None, None) => return Err(CliError::Usage("give --poly, --file or --fixture".into())),
    };
    if delta.is_zero() {
        return Err(CliError::Usage("the polynomial must be nonzero".into()));
    }
    let mut out = Output::new("resultant");
    out.field("polynomial", delta.to_string());
    out.line(format!("polynomial = {delta}"));
    let rows: Vec<(u32, BigInt)> = match (d, sweep) {
        (Some(d), _) => {
            check_d(d, 1)?;
            vec![(d, twist_core::laurent::resultant_with_cyclotomic(&delta, d)?)]
        }
        (None, Some(dmax)) => (2..=dmax)
            .map(|d| Ok((d, twist_core::laurent::resultant_with_cyclotomic(&delta, d)?)))
            .collect::<Result<_>>()?,
        (None, None) => return Err(CliError::Usage("give --d or --sweep".into())),
    };
    sweep_lines(&mut out, &rows);
    Ok(out)
}

pub fn homcheck(fixture: Option<&str>, presentation: Option<&Path>, hom: Option<&Path>) -> Result<(Output, bool)> {
    let (pres, phi): (NamedPresentation, FiniteHom<Permutations>) = match (fixture, presentation, hom) {
        (Some(name), None, None) => match Source::fixture(name)? {
            Payload::Representation { presentation, hom } => (presentation, hom),
            _ => return Err(CliError::Usage(format!("fixture `{name}` is not a presentation"))),
        },
        (None, Some(p), Some(h)) => {
            let pres = parse_presentation(&read(p)?)?;
            match parse_hom(&read(h)?, &pres.names)? {
                TargetHom::Permutation(phi) => (pres, phi),
                TargetHom::Cyclic(phi) => return homcheck_output(&pres, &phi),
            }
        }
        _ => return Err(CliError::Usage("give --fixture, or both --presentation and --hom".into())),
    };
    homcheck_output(&pres, &phi)
}

fn homcheck_output<G: FiniteGroup>(pres: &NamedPresentation, phi: &FiniteHom<G>) -> Result<(Output, bool)> {
    let report = verify_homomorphism(phi, &pres.presentation)?;
    let order = phi.generated_subgroup_order()?;
    let surjective = order as u128 == phi.group().order();
    let mut out = Output::new("homcheck");
    out.field("target", phi.group().name())
        .field("relators", report.total)
        .field("killed", report.passed())
        .field("failed", report.failed.iter().map(|i| i + 1).collect::<Vec<_>>())
        .field("image_order", order)
        .field("target_order", phi.group().order() as u64)
        .field("surjective", surjective);
    out.line(format!("target: {}", phi.group().name())).line(format!(
        "relations: {}/{} ok; image order = {} ({})",
        report.passed(),
        report.total,
        order,
        if surjective { "surjective" } else { "not surjective" }
    ));
    for &i in &report.failed {
        out.line(format!("failed relator {}: {}", i + 1, pres.names.format_word(&pres.presentation.relators()[i])));
    }
    Ok((out, report.all_killed()))
}

pub fn report(path: &Path, max_minors: u128) -> Result<(Output, Report)> {
    let p: LambdaMatrix = parse_lambda_matrix(&read(path)?)?;
    let r = evaluate_fibred_obstruction(&p, max_minors);
    let mut out = Output::new("report");
    out.field("rows", r.generators)
        .field("cols", r.relations)
        .field("rank", r.rank)
        .field("delta", r.delta.as_ref().map(|d| Value::from(d.to_string())).unwrap_or(Value::Null));
    out.line(format!("presentation: {}x{}", r.generators, r.relations))
        .line(format!("rank = {}", r.rank))
        .line(format!("delta = {}", r.delta.as_ref().map_or("unknown".to_string(), |d| d.to_string())));
    verdict_lines(&mut out, &r);
    Ok((out, r))
}

/// One named check: `Ok(detail)` on success, `Err(detail)` on failure.
type Check = (&'static str, std::result::Result<String, String>);

fn expect(cond: bool, ok: String, bad: String) -> std::result::Result<String, String> {
    if cond {
        Ok(ok)
    } else {
        Err(bad)
    }
}

fn selftest_checks(seed: u64) -> Result<Vec<Check>> {
    let mut checks: Vec<Check> = Vec::new();

    let Payload::Monodromy(tm) = Fixture::TrefoilMonodromy.load::<BigInt>()? else { unreachable!() };
    let z3 = parse_inline_hom("Z/3:x=1,y=1", &tm.names)?;
    let TargetHom::Cyclic(alpha) = z3 else { unreachable!() };
    let inv: Twisted = twisted_invariants(&tm.endo, 2, &alpha)?;
    let delta = inv.delta.to_string();
    checks.push((
        "trefoil twisted polynomial",
        expect(
            delta == "s^4 - s^3 - s + 1" && inv.h_matrix.det().is_one(),
            format!("delta = {delta}"),
            format!("delta = {delta}, det H = {}", inv.h_matrix.det()),
        ),
    ));

    let Payload::Seifert(ts) = Fixture::TrefoilSeifert.load::<BigInt>()? else { unreachable!() };
    let a = branched_cover_homology_from_monodromy::<BigInt>(&tm.endo, 2)?.to_string();
    let b = resultant_order_check(&ts, 2)?.homology.to_string();
    checks.push((
        "trefoil double branched cover",
        expect(a == "Z/3" && b == "Z/3", format!("{a} from both pipelines"), format!("monodromy {a}, Seifert {b}")),
    ));

    let Payload::Seifert(f8) = Fixture::Figure8Seifert.load::<BigInt>()? else { unreachable!() };
    let mut bad = None;
    let h = monodromy_power_presentation(&f8, 1)?.h;
    for n in 2..=12 {
        let p = monodromy_power_presentation(&f8, n)?;
        let formula = BigInt::from(2) - &p.h_power[(0, 0)] - &p.h_power[(1, 1)];
        if p.det != formula || p.det > BigInt::from(-5) || (n == 2 && p.det != BigInt::from(-5)) {
            bad.get_or_insert(format!("n = {n}: det = {}", p.det));
        }
    }
    let h_ok = h == Matrix::from_fn(2, 2, |i, j| BigInt::from([[2, -1], [-1, 1]][i][j]));
    checks.push((
        "figure-eight monodromy powers",
        match bad {
            None if h_ok => Ok(format!("H = {h}; det(H^n - I) <= -5 for n = 2..12")),
            None => Err(format!("H = {h}")),
            Some(e) => Err(e),
        },
    ));

    let c = resultant_order_check(&f8, 2)?;
    checks.push((
        "figure-eight double branched cover",
        expect(
            c.homology.to_string() == "Z/5" && c.agree,
            format!("H1 = {}; resultant = {}", c.homology, c.resultant),
            format!("H1 = {}; resultant = {}", c.homology, c.resultant),
        ),
    ));

    let Payload::Representation { presentation, hom } = Fixture::PaperS5.load::<BigInt>()? else { unreachable!() };
    let rep = verify_homomorphism(&hom, &presentation.presentation)?;
    let order = hom.generated_subgroup_order()?;
    checks.push((
        "A5 representation",
        expect(
            rep.all_killed() && rep.total == 14 && order == 60,
            format!("{}/{} relators killed; image order {order}", rep.passed(), rep.total),
            format!("{}/{} relators killed; image order {order}", rep.passed(), rep.total),
        ),
    ));

    let lin: LambdaMatrix = parse_lambda_matrix("1 1\n2s-2\n")?;
    let zero: LambdaMatrix = parse_lambda_matrix("1 2\n0 0\n")?;
    let v1 = evaluate_fibred_obstruction(&lin, 1000).verdict;
    let v2 = evaluate_fibred_obstruction(&zero, 1000).verdict;
    checks.push((
        "negative controls",
        expect(
            v1 == Verdict::NotFibred && v2 == Verdict::NotFibred,
            "2s - 2 and the 1x2 zero matrix are certified non-fibred".to_string(),
            format!("verdicts {v1}, {v2}"),
        ),
    ));

    let mut rng = StdRng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut cases = 0;
    for _ in 0..20 {
        let rank = rng.gen_range(2..=3);
        let (f, _) = random_automorphism(rank, 8, &mut rng);
        for d in 1..=3 {
            for r in 1..=4 {
                for alpha in compatible_cyclic_homs(&f, d, r)? {
                    cases += 1;
                    let inv: Twisted = twisted_invariants(&f, d, &alpha)?;
                    if !inv.delta.is_monic() || !inv.h_matrix.det().abs().is_one() {
                        failures.push(describe(&f, d, &alpha));
                    }
                }
            }
        }
    }
    checks.push((
        "random automorphisms",
        expect(failures.is_empty(), format!("{cases} lifts monic and unimodular"), failures.join("; ")),
    ));

    let mut mismatches = Vec::new();
    for _ in 0..10 {
        let s: Seifert = random_seifert(rng.gen_range(1..=2), 3, &mut rng);
        for d in 2..=6 {
            let c = resultant_order_check(&s, d)?;
            if !c.agree {
                mismatches.push(format!("S = {s}, d = {d}"));
            }
        }
    }
    checks.push((
        "random Seifert resultants",
        expect(mismatches.is_empty(), "50 orders agree".to_string(), mismatches.join("; ")),
    ));
    Ok(checks)
}

fn describe(f: &FreeEndo, d: u32, alpha: &FiniteHom<twist_core::grouphom::Cyclic>) -> String {
    format!("{f:?} d = {d} alpha = {:?}", alpha.images())
}

pub fn selftest(seed: u64) -> Result<(Output, bool)> {
    let checks = selftest_checks(seed)?;
    let passed = checks.iter().filter(|(_, r)| r.is_ok()).count();
    let mut out = Output::new("selftest");
    out.field("seed", seed)
        .field(
            "checks",
            checks
                .iter()
                .map(|(name, r)| match r {
                    Ok(detail) => json!({"name": name, "ok": true, "detail": detail}),
                    Err(detail) => json!({"name": name, "ok": false, "detail": detail}),
                })
                .collect::<Vec<_>>(),
        )
        .field("passed", passed)
        .field("total", checks.len());
    for (name, r) in &checks {
        match r {
            Ok(detail) => out.line(format!("ok   {name}: {detail}")),
            Err(detail) => out.line(format!("FAIL {name}: {detail}")),
        };
    }
    out.line(format!("selftest: {passed}/{} passed; seed = {seed}", checks.len()));
    Ok((out, passed == checks.len()))
}
