//! Machine-readable reports: deterministic structured text, one block per
//! result, with content hashes identifying the inputs.

use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::ideals::InvariantReport;
use crate::scalars::{BilinearType, ScalarRingResult};
use crate::verdict::{EquivCertificate, Verdict};
use crate::zlattice::{AbInvariants, IntMatrix, Subgroup};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// 64-bit FNV-1a over raw bytes; used to fingerprint inputs in reports.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in bytes {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Builder for the report document.
pub struct Report {
    out: String,
}

impl Report {
    pub fn new(command: &str) -> Report {
        let mut out = String::new();
        let _ = writeln!(out, "fdz report");
        let _ = writeln!(out, "version: {TOOL_VERSION}");
        let _ = writeln!(out, "command: {command}");
        Report { out }
    }

    pub fn input(&mut self, label: &str, content: &str) {
        let _ = writeln!(
            self.out,
            "input: {label} fnv1a64:{:016x}",
            fnv1a64(content.as_bytes())
        );
    }

    pub fn line(&mut self, key: &str, value: impl std::fmt::Display) {
        let _ = writeln!(self.out, "{key}: {value}");
    }

    pub fn begin(&mut self, name: &str) {
        let _ = writeln!(self.out, "begin {name}");
    }

    pub fn end(&mut self, name: &str) {
        let _ = writeln!(self.out, "end {name}");
    }

    pub fn raw(&mut self, text: &str) {
        self.out.push_str(text);
        if !text.ends_with('\n') {
            self.out.push('\n');
        }
    }

    pub fn matrix(&mut self, key: &str, m: &IntMatrix) {
        for i in 0..m.rows() {
            let mut line = String::new();
            for j in 0..m.cols() {
                if j > 0 {
                    line.push(' ');
                }
                let _ = write!(line, "{}", m[(i, j)]);
            }
            let _ = writeln!(self.out, "{key}: {line}");
        }
        if m.rows() == 0 {
            let _ = writeln!(self.out, "{key}: (none)");
        }
    }

    pub fn finish(self) -> String {
        self.out
    }
}

pub fn describe_invariants(inv: &AbInvariants) -> String {
    let mut s = format!("free rank {}", inv.free_rank);
    if inv.torsion_factors.is_empty() {
        s.push_str(", no torsion");
    } else {
        s.push_str(", torsion");
        for f in &inv.torsion_factors {
            let _ = write!(s, " {f}");
        }
    }
    s
}

pub fn subgroup_block(r: &mut Report, name: &str, s: &Subgroup) {
    r.begin(name);
    r.line("type", describe_invariants(&s.group_invariants()));
    r.matrix("gen", s.rows());
    r.end(name);
}

pub fn invariant_block(r: &mut Report, rep: &InvariantReport) {
    r.begin("invariants");
    r.line("e", &rep.e);
    r.line("mn", describe_invariants(&rep.mn_invariants));
    r.line("regular", rep.regular);
    r.line("tame", rep.tame);
    r.line("width lower", rep.width_lower);
    r.line("width upper", rep.width_upper);
    match rep.width_exact {
        Some(w) => r.line("width exact", w),
        None => r.line("width exact", "unknown"),
    }
    r.end("invariants");
    subgroup_block(r, "annihilator", &rep.ann);
    subgroup_block(r, "square", &rep.square);
    subgroup_block(r, "isolator-of-square", &rep.is_square);
    subgroup_block(r, "delta", &rep.delta);
    subgroup_block(r, "addition", &rep.addition);
    subgroup_block(r, "M", &rep.big_m);
    subgroup_block(r, "N", &rep.big_n);
}

pub fn scalar_ring_block(r: &mut Report, res: &ScalarRingResult) {
    r.begin("scalar-ring");
    r.line(
        "additive",
        describe_invariants(&res.ring.ring().additive_invariants()),
    );
    let text = crate::format::serialize_presentation(&crate::format::ParsedPresentation::Scalar(
        res.ring.clone(),
    ));
    r.raw(&text);
    for d in &res.diagnostics {
        r.line("note", d);
    }
    r.end("scalar-ring");
}

pub fn bilinear_type_block(r: &mut Report, t: &BilinearType, nondeg: (bool, bool)) {
    r.begin("bilinear-type");
    let opt = |v: Option<usize>| v.map_or("none".to_string(), |x| x.to_string());
    r.line("width", opt(t.width_upper));
    r.line("width exact", t.width_exact);
    r.line("c1", opt(t.c1_upper));
    r.line("c1 exact", t.c1_exact);
    r.line("c2", opt(t.c2_upper));
    r.line("c2 exact", t.c2_exact);
    r.line("nondegenerate left", nondeg.0);
    r.line("nondegenerate right", nondeg.1);
    r.end("bilinear-type");
}

pub fn adapted_block(r: &mut Report, ab: &crate::equiv::AdaptedBasis) {
    r.begin("adapted-basis");
    r.line(
        "breakpoints",
        format!("{} {} {} {}", ab.l, ab.m, ab.n, ab.r),
    );
    let mut factors = String::new();
    for f in &ab.invariant_factors {
        let _ = write!(factors, " {f}");
    }
    r.line("invariant factors", if factors.is_empty() { " (none)" } else { &factors });
    r.line("neutral", ab.neutral_count);
    r.matrix("row", &ab.rows);
    r.end("adapted-basis");
}

pub fn verdict_block(r: &mut Report, v: &Verdict) {
    r.begin("verdict");
    r.line("kind", v.kind_name());
    match v {
        Verdict::Isomorphic(w) => {
            for (i, m) in w.maps.iter().enumerate() {
                r.matrix(&format!("map{i}"), m);
            }
        }
        Verdict::Equivalent(cert) => certificate_block_inner(r, cert),
        Verdict::NotIsomorphic { reason }
        | Verdict::NotEquivalent { reason }
        | Verdict::Unknown { reason } => {
            r.line("reason", reason);
        }
    }
    r.end("verdict");
}

fn certificate_block_inner(r: &mut Report, cert: &EquivCertificate) {
    r.line("d", &cert.d);
    r.line("e", &cert.e);
    r.matrix("phi", &cert.phi);
    r.matrix("r0", &cert.r0_gens);
    r.matrix("s0", &cert.s0_gens);
}

pub fn exit_code_for(v: &Verdict) -> i32 {
    if v.is_positive() {
        0
    } else if v.is_negative() {
        1
    } else {
        3
    }
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_is_stable() {
        assert_eq!(fnv1a64(b""), 0xcbf29ce484222325);
        assert_eq!(fnv1a64(b"a"), 0xaf63dc4c8601ec8c);
    }

    #[test]
    fn reports_are_deterministic() {
        let build = || {
            let mut r = Report::new("demo");
            r.input("x", "content");
            r.begin("b");
            r.line("k", 1);
            r.end("b");
            r.finish()
        };
        assert_eq!(build(), build());
    }
}
