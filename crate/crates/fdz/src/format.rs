//! The presentation and certificate file formats: UTF-8 structured text,
//! line-oriented, with 1-based indices matching the usual subscript
//! conventions. Parsing either succeeds with a validated object or fails
//! with a line-anchored diagnostic.
//!
//! Presentation files:
//!
//! ```text
//! kind: ring
//! rank: 3
//! periods: 0 0 2
//! torsion 3:
//! mult 1 1: 3 1
//! ```
//!
//! `periods` uses 0 for an infinite period. A `torsion i:` line lists pairs
//! `k t_ik` with `k > i` and is present for every generator of finite
//! period. A `mult i j:` line lists pairs `k t_ijk`. Scalar rings add
//! `one: c_1 .. c_rank`. Modules and algebras carry a scalar block through
//! `scalar.`-prefixed keys plus `action i j:` lines; algebras additionally
//! use `mult i j:` lines for the module sort.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::ring::two_sorted::{TwoSortedAlgebraPresentation, TwoSortedModulePresentation};
use crate::ring::{RingPresentation, ScalarRingPresentation};
use crate::verdict::EquivCertificate;
use crate::zlattice::{AbGroupPresentation, IntMatrix};

/// A parse failure anchored to a 1-based line number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Any of the four presentation kinds a file can carry.
#[derive(Clone, Debug)]
pub enum ParsedPresentation {
    Ring(RingPresentation),
    Scalar(ScalarRingPresentation),
    Module(TwoSortedModulePresentation),
    Algebra(TwoSortedAlgebraPresentation),
}

impl ParsedPresentation {
    pub fn kind_name(&self) -> &'static str {
        match self {
            ParsedPresentation::Ring(_) => "ring",
            ParsedPresentation::Scalar(_) => "scalar_ring",
            ParsedPresentation::Module(_) => "module",
            ParsedPresentation::Algebra(_) => "algebra",
        }
    }

    /// The plain ring content, when the kind has one.
    pub fn as_ring(&self) -> Option<&RingPresentation> {
        match self {
            ParsedPresentation::Ring(r) => Some(r),
            ParsedPresentation::Scalar(s) => Some(s.ring()),
            _ => None,
        }
    }

    /// Semantic validation diagnostics for whatever was parsed.
    pub fn validate(&self) -> Vec<crate::ring::Diagnostic> {
        match self {
            ParsedPresentation::Ring(r) => r.validate(),
            ParsedPresentation::Scalar(s) => s.validate(),
            ParsedPresentation::Module(m) => m.validate(),
            ParsedPresentation::Algebra(a) => a.validate(),
        }
    }
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

fn parse_int(tok: &str, line: usize) -> Result<BigInt, ParseError> {
    tok.parse::<BigInt>()
        .map_err(|_| err(line, format!("expected an integer, found {tok:?}")))
}

fn parse_ints(s: &str, line: usize) -> Result<Vec<BigInt>, ParseError> {
    s.split_whitespace().map(|t| parse_int(t, line)).collect()
}

fn parse_pairs(s: &str, line: usize) -> Result<Vec<(usize, BigInt)>, ParseError> {
    let toks: Vec<&str> = s.split_whitespace().collect();
    if toks.len() % 2 != 0 {
        return Err(err(line, "coefficient list must be index value pairs"));
    }
    let mut out = Vec::with_capacity(toks.len() / 2);
    for chunk in toks.chunks(2) {
        let k: usize = chunk[0]
            .parse()
            .map_err(|_| err(line, format!("expected a 1-based index, found {:?}", chunk[0])))?;
        if k == 0 {
            return Err(err(line, "indices are 1-based"));
        }
        out.push((k, parse_int(chunk[1], line)?));
    }
    Ok(out)
}

#[derive(Default)]
struct RawBlock {
    rank: Option<(usize, usize)>,
    periods: Option<(Vec<BigInt>, usize)>,
    torsion: BTreeMap<usize, (Vec<(usize, BigInt)>, usize)>,
    mult: BTreeMap<(usize, usize), (Vec<(usize, BigInt)>, usize)>,
    action: BTreeMap<(usize, usize), (Vec<(usize, BigInt)>, usize)>,
    one: Option<(Vec<BigInt>, usize)>,
}

impl RawBlock {
    fn into_ring(self, first_line: usize) -> Result<RingPresentation, ParseError> {
        let (rank, rank_line) = self.rank.ok_or_else(|| err(first_line, "missing rank"))?;
        let (periods, pline) = self
            .periods
            .ok_or_else(|| err(first_line, "missing periods"))?;
        if periods.len() != rank {
            return Err(err(pline, format!("expected {rank} periods")));
        }
        let mut torsion = vec![vec![BigInt::zero(); rank]; rank];
        for (i, (pairs, line)) in &self.torsion {
            if *i == 0 || *i > rank {
                return Err(err(*line, format!("torsion index {i} out of range")));
            }
            for (k, c) in pairs {
                if *k > rank {
                    return Err(err(*line, format!("torsion coefficient at k {k} > rank")));
                }
                if *k <= *i {
                    return Err(err(*line, format!("torsion coefficient at k {k} <= i {i}")));
                }
                torsion[i - 1][k - 1] = c.clone();
            }
        }
        let mut mult = vec![vec![BigInt::zero(); rank]; rank * rank];
        for ((i, j), (pairs, line)) in &self.mult {
            if *i == 0 || *i > rank || *j == 0 || *j > rank {
                return Err(err(*line, format!("tensor index ({i},{j}) out of range")));
            }
            for (k, c) in pairs {
                if *k == 0 || *k > rank {
                    return Err(err(*line, format!("tensor coefficient at k {k} out of range")));
                }
                mult[(i - 1) * rank + (j - 1)][k - 1] = c.clone();
            }
        }
        RingPresentation::new(periods, torsion, mult)
            .map_err(|e| err(rank_line, e.to_string()))
    }

    fn group_and_action(
        &self,
        scalar_rank: usize,
        first_line: usize,
    ) -> Result<(AbGroupPresentation, Vec<Vec<BigInt>>), ParseError> {
        let (rank, _) = self.rank.ok_or_else(|| err(first_line, "missing rank"))?;
        let (periods, pline) = self
            .periods
            .clone()
            .ok_or_else(|| err(first_line, "missing periods"))?;
        if periods.len() != rank {
            return Err(err(pline, format!("expected {rank} periods")));
        }
        let mut relations: Vec<Vec<BigInt>> = Vec::new();
        for (i, p) in periods.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let mut row = vec![BigInt::zero(); rank];
            row[i] = p.clone();
            if let Some((pairs, line)) = self.torsion.get(&(i + 1)) {
                for (k, c) in pairs {
                    if *k <= i + 1 || *k > rank {
                        return Err(err(*line, format!("torsion coefficient at k {k} invalid")));
                    }
                    row[k - 1] -= c;
                }
            }
            relations.push(row);
        }
        let group = AbGroupPresentation::new(rank, IntMatrix::from_row_vectors(relations, rank));
        let mut action = vec![vec![BigInt::zero(); rank]; scalar_rank * rank];
        for ((i, j), (pairs, line)) in &self.action {
            if *i == 0 || *i > scalar_rank {
                return Err(err(*line, format!("action scalar index {i} out of range")));
            }
            if *j == 0 || *j > rank {
                return Err(err(*line, format!("action module index {j} out of range")));
            }
            for (k, c) in pairs {
                if *k == 0 || *k > rank {
                    return Err(err(*line, format!("action coefficient at k {k} out of range")));
                }
                action[(i - 1) * rank + (j - 1)][k - 1] = c.clone();
            }
        }
        Ok((group, action))
    }

    fn module_mult(&self, rank: usize) -> Result<Vec<Vec<BigInt>>, ParseError> {
        let mut mult = vec![vec![BigInt::zero(); rank]; rank * rank];
        for ((i, j), (pairs, line)) in &self.mult {
            if *i == 0 || *i > rank || *j == 0 || *j > rank {
                return Err(err(*line, format!("tensor index ({i},{j}) out of range")));
            }
            for (k, c) in pairs {
                if *k == 0 || *k > rank {
                    return Err(err(*line, format!("tensor coefficient at k {k} out of range")));
                }
                mult[(i - 1) * rank + (j - 1)][k - 1] = c.clone();
            }
        }
        Ok(mult)
    }
}

/// Parses a presentation file.
pub fn parse_presentation(text: &str) -> Result<ParsedPresentation, ParseError> {
    let mut kind: Option<(String, usize)> = None;
    let mut main = RawBlock::default();
    let mut scalar = RawBlock::default();
    for (idx, raw_line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (head, rest) = line
            .split_once(':')
            .ok_or_else(|| err(lineno, "expected `key: value`"))?;
        let head = head.trim();
        let rest = rest.trim();
        let (block, head) = match head.strip_prefix("scalar.") {
            Some(h) => (&mut scalar, h.trim()),
            None => (&mut main, head),
        };
        let mut words = head.split_whitespace();
        let key = words.next().ok_or_else(|| err(lineno, "empty key"))?;
        let args: Vec<&str> = words.collect();
        match (key, args.len()) {
            ("kind", 0) => {
                if kind.is_some() {
                    return Err(err(lineno, "duplicate kind"));
                }
                kind = Some((rest.to_string(), lineno));
            }
            ("rank", 0) => {
                if block.rank.is_some() {
                    return Err(err(lineno, "duplicate rank"));
                }
                let r: usize = rest
                    .parse()
                    .map_err(|_| err(lineno, "rank must be a nonnegative integer"))?;
                if r > 64 {
                    return Err(err(lineno, "rank too large"));
                }
                block.rank = Some((r, lineno));
            }
            ("periods", 0) => {
                if block.periods.is_some() {
                    return Err(err(lineno, "duplicate periods"));
                }
                block.periods = Some((parse_ints(rest, lineno)?, lineno));
            }
            ("one", 0) => {
                if block.one.is_some() {
                    return Err(err(lineno, "duplicate one"));
                }
                block.one = Some((parse_ints(rest, lineno)?, lineno));
            }
            ("torsion", 1) => {
                let i: usize = args[0]
                    .parse()
                    .map_err(|_| err(lineno, "torsion index must be an integer"))?;
                if block.torsion.insert(i, (parse_pairs(rest, lineno)?, lineno)).is_some() {
                    return Err(err(lineno, format!("duplicate torsion row {i}")));
                }
            }
            ("mult", 2) => {
                let i: usize = args[0]
                    .parse()
                    .map_err(|_| err(lineno, "tensor index must be an integer"))?;
                let j: usize = args[1]
                    .parse()
                    .map_err(|_| err(lineno, "tensor index must be an integer"))?;
                if block
                    .mult
                    .insert((i, j), (parse_pairs(rest, lineno)?, lineno))
                    .is_some()
                {
                    return Err(err(lineno, format!("duplicate tensor entry {i} {j}")));
                }
            }
            ("action", 2) => {
                let i: usize = args[0]
                    .parse()
                    .map_err(|_| err(lineno, "action index must be an integer"))?;
                let j: usize = args[1]
                    .parse()
                    .map_err(|_| err(lineno, "action index must be an integer"))?;
                if block
                    .action
                    .insert((i, j), (parse_pairs(rest, lineno)?, lineno))
                    .is_some()
                {
                    return Err(err(lineno, format!("duplicate action entry {i} {j}")));
                }
            }
            _ => return Err(err(lineno, format!("unknown key {head:?}"))),
        }
    }
    let (kind, kind_line) = kind.ok_or_else(|| err(1, "missing kind"))?;
    match kind.as_str() {
        "ring" => Ok(ParsedPresentation::Ring(main.into_ring(kind_line)?)),
        "scalar_ring" => {
            let one = main
                .one
                .clone()
                .ok_or_else(|| err(kind_line, "scalar_ring requires one"))?;
            let ring = main.into_ring(kind_line)?;
            let s = ScalarRingPresentation::new(ring, &one.0)
                .map_err(|e| err(one.1, e.to_string()))?;
            Ok(ParsedPresentation::Scalar(s))
        }
        "module" | "algebra" => {
            let sone = scalar
                .one
                .clone()
                .ok_or_else(|| err(kind_line, "scalar block requires scalar.one"))?;
            let sring = scalar.into_ring(kind_line)?;
            let scalars = ScalarRingPresentation::new(sring, &sone.0)
                .map_err(|e| err(sone.1, e.to_string()))?;
            let (group, action) = main.group_and_action(scalars.rank(), kind_line)?;
            let module = TwoSortedModulePresentation::new(scalars, group, action)
                .map_err(|e| err(kind_line, e.to_string()))?;
            if kind == "module" {
                if !main.mult.is_empty() {
                    let line = main.mult.values().next().unwrap().1;
                    return Err(err(line, "module kind takes no mult lines"));
                }
                Ok(ParsedPresentation::Module(module))
            } else {
                let rank = module.module.ngens();
                let mult = main.module_mult(rank)?;
                let alg = TwoSortedAlgebraPresentation::new(module, mult)
                    .map_err(|e| err(kind_line, e.to_string()))?;
                Ok(ParsedPresentation::Algebra(alg))
            }
        }
        other => Err(err(kind_line, format!("unknown kind {other:?}"))),
    }
}

fn write_pairs(out: &mut String, row: &[BigInt]) {
    for (k, c) in row.iter().enumerate() {
        if !c.is_zero() {
            let _ = write!(out, " {} {}", k + 1, c);
        }
    }
}

fn serialize_ring_block(out: &mut String, prefix: &str, r: &RingPresentation) {
    let _ = writeln!(out, "{prefix}rank: {}", r.rank());
    let mut periods = String::new();
    for p in r.periods() {
        let _ = write!(periods, " {p}");
    }
    let _ = writeln!(out, "{prefix}periods:{periods}");
    for i in 0..r.rank() {
        if r.periods()[i].is_zero() {
            continue;
        }
        let mut line = format!("{prefix}torsion {}:", i + 1);
        write_pairs(&mut line, r.torsion_row(i));
        let _ = writeln!(out, "{line}");
    }
    for i in 0..r.rank() {
        for j in 0..r.rank() {
            let row = r.mult_row(i, j);
            if row.iter().all(Zero::is_zero) {
                continue;
            }
            let mut line = format!("{prefix}mult {} {}:", i + 1, j + 1);
            write_pairs(&mut line, row);
            let _ = writeln!(out, "{line}");
        }
    }
}

fn serialize_coords(out: &mut String, key: &str, coords: &[BigInt]) {
    let mut line = format!("{key}:");
    for c in coords {
        let _ = write!(line, " {c}");
    }
    let _ = writeln!(out, "{line}");
}

/// Deterministic serialization; parsing it back reproduces the object.
pub fn serialize_presentation(p: &ParsedPresentation) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "kind: {}", p.kind_name());
    match p {
        ParsedPresentation::Ring(r) => serialize_ring_block(&mut out, "", r),
        ParsedPresentation::Scalar(s) => {
            serialize_ring_block(&mut out, "", s.ring());
            serialize_coords(&mut out, "one", &s.one().coords);
        }
        ParsedPresentation::Module(m) => {
            serialize_two_sorted(&mut out, m, None);
        }
        ParsedPresentation::Algebra(a) => {
            let nm = a.module.module.ngens();
            let mult: Vec<Vec<BigInt>> = (0..nm * nm)
                .map(|idx| a.mult_row(idx / nm, idx % nm).to_vec())
                .collect();
            serialize_two_sorted(&mut out, &a.module, Some(&mult));
        }
    }
    out
}

fn serialize_two_sorted(
    out: &mut String,
    m: &TwoSortedModulePresentation,
    mult: Option<&[Vec<BigInt>]>,
) {
    serialize_ring_block(out, "scalar.", m.scalars.ring());
    serialize_coords(out, "scalar.one", &m.scalars.one().coords);
    let nm = m.module.ngens();
    let _ = writeln!(out, "rank: {nm}");
    // The module group is stored with canonical Hermite relations; emit the
    // induced period and torsion data row by row.
    let rel = m.module.relations();
    let mut periods = vec![BigInt::zero(); nm];
    let mut torsion: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); nm]; nm];
    for r in 0..rel.rows() {
        let row = rel.row(r);
        let pivot = row.iter().position(|c| !c.is_zero()).unwrap();
        periods[pivot] = row[pivot].clone();
        for k in pivot + 1..nm {
            torsion[pivot][k] = -row[k].clone();
        }
    }
    let mut pline = String::new();
    for p in &periods {
        let _ = write!(pline, " {p}");
    }
    let _ = writeln!(out, "periods:{pline}");
    for (i, p) in periods.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let mut line = format!("torsion {}:", i + 1);
        write_pairs(&mut line, &torsion[i]);
        let _ = writeln!(out, "{line}");
    }
    for i in 0..m.scalars.rank() {
        for j in 0..nm {
            let row = m.action_row(i, j);
            if row.iter().all(Zero::is_zero) {
                continue;
            }
            let mut line = format!("action {} {}:", i + 1, j + 1);
            write_pairs(&mut line, row);
            let _ = writeln!(out, "{line}");
        }
    }
    if let Some(mm) = mult {
        for i in 0..nm {
            for j in 0..nm {
                let row = &mm[i * nm + j];
                if row.iter().all(Zero::is_zero) {
                    continue;
                }
                let mut line = format!("mult {} {}:", i + 1, j + 1);
                write_pairs(&mut line, row);
                let _ = writeln!(out, "{line}");
            }
        }
    }
}

/// Parses a certificate file: `kind: certificate`, integer fields `d` and
/// `e`, and the row blocks `phi:`, `r0:`, `s0:`.
pub fn parse_certificate(text: &str) -> Result<EquivCertificate, ParseError> {
    let mut kind_seen = false;
    let mut d: Option<BigInt> = None;
    let mut e: Option<BigInt> = None;
    let mut blocks: BTreeMap<String, (Vec<Vec<BigInt>>, usize)> = BTreeMap::new();
    let mut current: Option<String> = None;
    for (idx, raw_line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some((head, rest)) = line.split_once(':') {
            let head = head.trim();
            let rest = rest.trim();
            current = None;
            match head {
                "kind" => {
                    if rest != "certificate" {
                        return Err(err(lineno, format!("unknown kind {rest:?}")));
                    }
                    kind_seen = true;
                }
                "d" => d = Some(parse_int(rest, lineno)?),
                "e" => e = Some(parse_int(rest, lineno)?),
                "phi" | "r0" | "s0" => {
                    if !rest.is_empty() {
                        return Err(err(lineno, "matrix rows follow on their own lines"));
                    }
                    if blocks.contains_key(head) {
                        return Err(err(lineno, format!("duplicate block {head}")));
                    }
                    blocks.insert(head.to_string(), (Vec::new(), lineno));
                    current = Some(head.to_string());
                }
                other => return Err(err(lineno, format!("unknown key {other:?}"))),
            }
        } else {
            let Some(name) = &current else {
                return Err(err(lineno, "row outside of a matrix block"));
            };
            let row = parse_ints(line, lineno)?;
            let entry = blocks.get_mut(name).unwrap();
            if let Some(first) = entry.0.first() {
                if first.len() != row.len() {
                    return Err(err(lineno, "inconsistent row width"));
                }
            }
            entry.0.push(row);
        }
    }
    if !kind_seen {
        return Err(err(1, "missing kind: certificate"));
    }
    let take = |name: &str, blocks: &mut BTreeMap<String, (Vec<Vec<BigInt>>, usize)>| {
        blocks
            .remove(name)
            .ok_or_else(|| err(1, format!("missing {name} block")))
    };
    let (phi_rows, phi_line) = take("phi", &mut blocks)?;
    let (r0_rows, r0_line) = take("r0", &mut blocks)?;
    let (s0_rows, s0_line) = take("s0", &mut blocks)?;
    if phi_rows.is_empty() {
        return Err(err(phi_line, "phi block is empty"));
    }
    let width = |rows: &[Vec<BigInt>]| rows.first().map_or(0, Vec::len);
    let phi_w = width(&phi_rows);
    let r0_w = width(&r0_rows);
    let s0_w = width(&s0_rows);
    let phi_h = phi_rows.len();
    if r0_w != 0 && r0_w != phi_h {
        return Err(err(r0_line, "r0 width must match the phi row count"));
    }
    if s0_w != 0 && s0_w != phi_w {
        return Err(err(s0_line, "s0 width must match the phi column count"));
    }
    Ok(EquivCertificate {
        phi: IntMatrix::from_row_vectors(phi_rows, phi_w),
        // Empty blocks encode the zero subgroup; widths come from phi.
        r0_gens: IntMatrix::from_row_vectors(r0_rows, if r0_w == 0 { phi_h } else { r0_w }),
        s0_gens: IntMatrix::from_row_vectors(s0_rows, if s0_w == 0 { phi_w } else { s0_w }),
        d: d.ok_or_else(|| err(1, "missing d"))?,
        e: e.ok_or_else(|| err(1, "missing e"))?,
    })
}

/// Serializes a certificate deterministically.
pub fn serialize_certificate(c: &EquivCertificate) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "kind: certificate");
    let _ = writeln!(out, "e: {}", c.e);
    let _ = writeln!(out, "d: {}", c.d);
    let block = |out: &mut String, name: &str, m: &IntMatrix| {
        let _ = writeln!(out, "{name}:");
        for i in 0..m.rows() {
            let mut line = String::new();
            for j in 0..m.cols() {
                if j > 0 {
                    line.push(' ');
                }
                let _ = write!(line, "{}", m[(i, j)]);
            }
            let _ = writeln!(out, "{line}");
        }
    };
    block(&mut out, "phi", &c.phi);
    block(&mut out, "r0", &c.r0_gens);
    block(&mut out, "s0", &c.s0_gens);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    const FIXTURE: &str = "kind: ring\nrank: 3\nperiods: 0 0 2\ntorsion 3:\nmult 1 1: 3 1\n";

    #[test]
    fn parses_the_reference_fixture() {
        let p = parse_presentation(FIXTURE).unwrap();
        let ParsedPresentation::Ring(r) = &p else {
            panic!("expected a ring")
        };
        assert_eq!(r, &samples::nonregular_rank3());
        assert!(p.validate().is_empty());
    }

    #[test]
    fn round_trip_is_identity() {
        let p = parse_presentation(FIXTURE).unwrap();
        let s = serialize_presentation(&p);
        let q = parse_presentation(&s).unwrap();
        assert_eq!(serialize_presentation(&q), s);
    }

    #[test]
    fn rejects_torsion_at_low_index() {
        let bad = "kind: ring\nrank: 3\nperiods: 0 0 2\ntorsion 3: 1 1\n";
        let e = parse_presentation(bad).unwrap_err();
        assert!(e.message.contains("k 1 <= i 3"), "{e}");
        assert_eq!(e.line, 4);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_presentation("").is_err());
        assert!(parse_presentation("kind: frobnicator\n").is_err());
        assert!(parse_presentation("kind: ring\nrank: two\n").is_err());
        assert!(parse_presentation("kind: ring\nrank: 1\nperiods: 0 0\n").is_err());
    }

    #[test]
    fn scalar_ring_round_trip() {
        let z6 = "kind: scalar_ring\nrank: 1\nperiods: 6\ntorsion 1:\nmult 1 1: 1 1\none: 1\n";
        let p = parse_presentation(z6).unwrap();
        assert!(p.validate().is_empty());
        let s = serialize_presentation(&p);
        let q = parse_presentation(&s).unwrap();
        assert_eq!(serialize_presentation(&q), s);
    }

    #[test]
    fn module_and_algebra_parse() {
        let module = "kind: module\nscalar.rank: 1\nscalar.periods: 0\nscalar.mult 1 1: 1 1\n\
                      scalar.one: 1\nrank: 2\nperiods: 0 0\naction 1 1: 1 1\naction 1 2: 2 1\n";
        let p = parse_presentation(module).unwrap();
        assert!(p.validate().is_empty());
        let s = serialize_presentation(&p);
        assert_eq!(serialize_presentation(&parse_presentation(&s).unwrap()), s);
        let algebra = format!("{}mult 1 1: 1 1\n", module.replace("kind: module", "kind: algebra"));
        let p = parse_presentation(&algebra).unwrap();
        assert!(matches!(p, ParsedPresentation::Algebra(_)));
    }

    #[test]
    fn certificate_round_trip() {
        let r = samples::nonregular_rank3();
        let rep = crate::ideals::invariant_report(&r);
        let (_, cert) = crate::equiv::twin(&r, &rep, &crate::equiv::TwistSpec::plain(&[3])).unwrap();
        let text = serialize_certificate(&cert);
        let back = parse_certificate(&text).unwrap();
        assert_eq!(back, cert);
    }

    #[test]
    fn certificate_rejects_ragged_rows() {
        let bad = "kind: certificate\nd: 1\ne: 2\nphi:\n1 0\n1\nr0:\ns0:\n";
        let e = parse_certificate(bad).unwrap_err();
        assert_eq!(e.line, 6);
    }
}
