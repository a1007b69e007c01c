//! Command line front end: validates presentation files, computes invariant
//! reports, decides isomorphism and elementary equivalence, checks
//! certificates, generates twins, and searches prime decompositions.
//!
//! Exit codes: 0 = positive verdict (or success), 1 = negative verdict or
//! failed validation, 2 = unreadable or ill-formed input, 3 = unknown.

use std::process::ExitCode;

use num_bigint::BigInt;

use fdz::equiv;
use fdz::format::{self, ParsedPresentation};
use fdz::ideals;
use fdz::primes;
use fdz::report::{self, Report};
use fdz::ring::RingPresentation;
use fdz::scalars;
use fdz::zlattice::IntMatrix;

const USAGE: &str = "\
usage: fdz <command> [args]

commands:
  validate  <file>                      check a presentation file
  invariants <file>                     full invariant report for a ring
  iso       <file1> <file2> [--height H]   decide ring isomorphism
  equiv     <file1> <file2> [--height H]   decide elementary equivalence
  certify   <file1> <file2> --witness <certificate>
  twin      <file> --d <list> [--matrix <entries>] [--stage J]
  primes    <file> [--bound B]          prime decomposition of zero

flags:
  --height H   pseudo-basis search height (default 3)
  --bound B    candidate generator height for prime searches (default 16)
  --witness P  certificate file for certify
  --output P   write the report (twin: the presentation file) to P
";

struct Flags {
    height: u32,
    bound: u32,
    witness: Option<String>,
    output: Option<String>,
    d_list: Option<Vec<i64>>,
    matrix: Option<Vec<i64>>,
    stage: Option<usize>,
    positional: Vec<String>,
}

fn parse_flags(args: &[String]) -> Result<Flags, String> {
    let mut f = Flags {
        height: 3,
        bound: 16,
        witness: None,
        output: None,
        d_list: None,
        matrix: None,
        stage: None,
        positional: Vec::new(),
    };
    let mut it = args.iter();
    while let Some(a) = it.next() {
        let mut grab = |name: &str| -> Result<String, String> {
            it.next()
                .cloned()
                .ok_or_else(|| format!("{name} needs a value"))
        };
        match a.as_str() {
            "--height" => {
                f.height = grab("--height")?
                    .parse()
                    .map_err(|_| "--height must be a nonnegative integer".to_string())?
            }
            "--bound" => {
                f.bound = grab("--bound")?
                    .parse()
                    .map_err(|_| "--bound must be a nonnegative integer".to_string())?
            }
            "--witness" => f.witness = Some(grab("--witness")?),
            "--output" => f.output = Some(grab("--output")?),
            "--stage" => {
                f.stage = Some(
                    grab("--stage")?
                        .parse()
                        .map_err(|_| "--stage must be a positive integer".to_string())?,
                )
            }
            "--d" => {
                let v = grab("--d")?;
                let parsed: Result<Vec<i64>, _> =
                    v.split(',').map(|t| t.trim().parse::<i64>()).collect();
                f.d_list = Some(parsed.map_err(|_| "--d must be a comma list of integers")?);
            }
            "--matrix" => {
                let v = grab("--matrix")?;
                let parsed: Result<Vec<i64>, _> =
                    v.split(',').map(|t| t.trim().parse::<i64>()).collect();
                f.matrix = Some(parsed.map_err(|_| "--matrix must be a comma list of integers")?);
            }
            other if other.starts_with("--") => return Err(format!("unknown flag {other}")),
            other => f.positional.push(other.to_string()),
        }
    }
    Ok(f)
}

fn read_file(path: &str) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))
}

fn load_ring(path: &str) -> Result<(RingPresentation, String), (String, u8)> {
    let text = read_file(path).map_err(|e| (e, 2))?;
    let parsed = format::parse_presentation(&text).map_err(|e| (format!("{path}: {e}"), 2))?;
    let Some(ring) = parsed.as_ring() else {
        return Err((format!("{path}: expected a ring or scalar_ring file"), 2));
    };
    let issues = ring.validate();
    if !issues.is_empty() {
        return Err((format!("{path}: invalid presentation: {}", issues[0]), 1));
    }
    Ok((ring.clone(), text))
}

fn emit(report: Report, output: &Option<String>) -> Result<(), (String, u8)> {
    let text = report.finish();
    match output {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text).map_err(|e| (format!("cannot write {path}: {e}"), 2)),
    }
}

fn run() -> Result<u8, (String, u8)> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let Some(command) = args.first().cloned() else {
        return Err((USAGE.to_string(), 2));
    };
    let flags = parse_flags(&args[1..]).map_err(|e| (format!("{e}\n\n{USAGE}"), 2))?;
    match command.as_str() {
        "validate" => cmd_validate(&flags),
        "invariants" => cmd_invariants(&flags),
        "iso" => cmd_pair(&flags, false),
        "equiv" => cmd_pair(&flags, true),
        "certify" => cmd_certify(&flags),
        "twin" => cmd_twin(&flags),
        "primes" => cmd_primes(&flags),
        "help" | "--help" | "-h" => {
            print!("{USAGE}");
            Ok(0)
        }
        other => Err((format!("unknown command {other:?}\n\n{USAGE}"), 2)),
    }
}

fn one_path(flags: &Flags) -> Result<&str, (String, u8)> {
    match flags.positional.as_slice() {
        [p] => Ok(p),
        _ => Err(("expected exactly one input file".to_string(), 2)),
    }
}

fn cmd_validate(flags: &Flags) -> Result<u8, (String, u8)> {
    let path = one_path(flags)?;
    let text = read_file(path).map_err(|e| (e, 2))?;
    let mut r = Report::new("validate");
    r.input(path, &text);
    let parsed = match format::parse_presentation(&text) {
        Err(e) => {
            r.line("parse", format!("error at {e}"));
            r.line("exit", 2);
            emit(r, &flags.output)?;
            return Ok(2);
        }
        Ok(p) => p,
    };
    r.line("kind", parsed.kind_name());
    let issues = parsed.validate();
    if issues.is_empty() {
        r.line("valid", true);
        r.line("exit", 0);
        emit(r, &flags.output)?;
        Ok(0)
    } else {
        r.line("valid", false);
        for d in &issues {
            r.line("violated", d);
        }
        r.line("exit", 1);
        emit(r, &flags.output)?;
        Ok(1)
    }
}

fn cmd_invariants(flags: &Flags) -> Result<u8, (String, u8)> {
    let path = one_path(flags)?;
    let (ring, text) = load_ring(path)?;
    let mut r = Report::new("invariants");
    r.input(path, &text);
    let rep = ideals::invariant_report(&ring);
    report::invariant_block(&mut r, &rep);
    match scalars::ring_of_scalars(&ring) {
        Ok(res) => report::scalar_ring_block(&mut r, &res),
        Err(e) => {
            r.begin("scalar-ring");
            r.line("error", e);
            r.end("scalar-ring");
        }
    }
    let ind = scalars::induced_bilinear(&ring);
    let t = scalars::type_of(&ind.map);
    report::bilinear_type_block(
        &mut r,
        &t,
        (ind.map.nondegenerate_left, ind.map.nondegenerate_right),
    );
    let ab = equiv::adapted_basis(&ring, &rep);
    report::adapted_block(&mut r, &ab);
    r.line("exit", 0);
    emit(r, &flags.output)?;
    Ok(0)
}

fn cmd_pair(flags: &Flags, equivalence: bool) -> Result<u8, (String, u8)> {
    let [p1, p2] = flags.positional.as_slice() else {
        return Err(("expected exactly two input files".to_string(), 2));
    };
    let (r1, t1) = load_ring(p1)?;
    let (r2, t2) = load_ring(p2)?;
    let name = if equivalence { "equiv" } else { "iso" };
    let mut r = Report::new(name);
    r.input(p1, &t1);
    r.input(p2, &t2);
    r.line("height", flags.height);
    let verdict = if equivalence {
        equiv::decide_equiv(&r1, &r2, flags.height)
    } else {
        equiv::decide_iso(&r1, &r2, flags.height)
    };
    report::verdict_block(&mut r, &verdict);
    let code = report::exit_code_for(&verdict);
    r.line("exit", code);
    emit(r, &flags.output)?;
    Ok(code as u8)
}

fn cmd_certify(flags: &Flags) -> Result<u8, (String, u8)> {
    let [p1, p2] = flags.positional.as_slice() else {
        return Err(("expected exactly two input files".to_string(), 2));
    };
    let Some(wpath) = &flags.witness else {
        return Err(("certify requires --witness".to_string(), 2));
    };
    let (r1, t1) = load_ring(p1)?;
    let (r2, t2) = load_ring(p2)?;
    let wtext = read_file(wpath).map_err(|e| (e, 2))?;
    let cert = format::parse_certificate(&wtext).map_err(|e| (format!("{wpath}: {e}"), 2))?;
    let mut r = Report::new("certify");
    r.input(p1, &t1);
    r.input(p2, &t2);
    r.input(wpath, &wtext);
    let outcome = equiv::certify_explain(&r1, &r2, &cert).map_err(|e| (e.to_string(), 2))?;
    let code = match outcome {
        Ok(()) => {
            r.line("certified", true);
            0
        }
        Err(reason) => {
            r.line("certified", false);
            r.line("reason", reason);
            1
        }
    };
    r.line("exit", code);
    emit(r, &flags.output)?;
    Ok(code)
}

fn cmd_twin(flags: &Flags) -> Result<u8, (String, u8)> {
    let path = one_path(flags)?;
    let (ring, text) = load_ring(path)?;
    let Some(ds) = &flags.d_list else {
        return Err(("twin requires --d".to_string(), 2));
    };
    let rep = ideals::invariant_report(&ring);
    let mixing = match &flags.matrix {
        None => {
            let p = rep.mn_invariants.torsion_factors.len();
            IntMatrix::identity(p)
        }
        Some(entries) => {
            let p = (entries.len() as f64).sqrt().round() as usize;
            if p * p != entries.len() {
                return Err(("--matrix must have a square number of entries".to_string(), 2));
            }
            let rows: Vec<Vec<i64>> = entries.chunks(p).map(|c| c.to_vec()).collect();
            IntMatrix::from_rows(&rows)
        }
    };
    let spec = equiv::TwistSpec {
        d_list: ds.iter().map(|&d| BigInt::from(d)).collect(),
        mixing,
        stage: flags.stage,
    };
    let mut r = Report::new("twin");
    r.input(path, &text);
    match equiv::twin(&ring, &rep, &spec) {
        Err(e) => {
            r.line("error", &e);
            r.line("exit", 2);
            if flags.output.is_none() {
                print!("{}", r.finish());
            } else {
                emit(r, &None)?;
            }
            Ok(2)
        }
        Ok((twin_ring, cert)) => {
            let serialized =
                format::serialize_presentation(&ParsedPresentation::Ring(twin_ring));
            r.begin("presentation");
            r.raw(&serialized);
            r.end("presentation");
            r.begin("certificate");
            r.raw(&format::serialize_certificate(&cert));
            r.end("certificate");
            r.line("exit", 0);
            // With --output the presentation itself is written, ready to be
            // fed back in; the report always goes to standard output.
            if let Some(out) = &flags.output {
                std::fs::write(out, serialized)
                    .map_err(|e| (format!("cannot write {out}: {e}"), 2))?;
            }
            print!("{}", r.finish());
            Ok(0)
        }
    }
}

fn cmd_primes(flags: &Flags) -> Result<u8, (String, u8)> {
    let path = one_path(flags)?;
    let text = read_file(path).map_err(|e| (e, 2))?;
    let parsed = format::parse_presentation(&text).map_err(|e| (format!("{path}: {e}"), 2))?;
    let ParsedPresentation::Scalar(scalar) = &parsed else {
        return Err((format!("{path}: primes requires a scalar_ring file"), 2));
    };
    let issues = scalar.validate();
    if !issues.is_empty() {
        return Err((format!("{path}: invalid presentation: {}", issues[0]), 1));
    }
    let bounds = primes::SearchBounds {
        height: flags.bound.min(16),
        ..primes::SearchBounds::default()
    };
    let mut r = Report::new("primes");
    r.input(path, &text);
    match primes::find_decomposition(scalar, &bounds) {
        None => {
            r.line("found", false);
            r.line("exit", 3);
            emit(r, &flags.output)?;
            Ok(3)
        }
        Some(dec) => {
            r.begin("decomposition");
            r.line("factors", dec.ideals.len());
            let chars: Vec<String> = dec.char_vector.iter().map(|c| c.to_string()).collect();
            r.line("characteristics", chars.join(" "));
            r.line("zero count", dec.zero_count);
            r.line("minimal among found", dec.minimal_among_found);
            for (i, ideal) in dec.ideals.iter().enumerate() {
                report::subgroup_block(&mut r, &format!("prime{}", i + 1), ideal);
            }
            r.end("decomposition");
            let verified = primes::verify_decomposition(scalar, &dec, &bounds);
            r.line("verified", verified);
            let code = u8::from(!verified);
            r.line("exit", code);
            emit(r, &flags.output)?;
            Ok(code)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err((msg, code)) => {
            eprintln!("{msg}");
            ExitCode::from(code)
        }
    }
}
