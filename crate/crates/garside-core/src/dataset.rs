//! Versioned, line-oriented text persistence of built datasets.
//!
//! The file stores the primary data (roots, interval permutations with
//! lengths, objects, simples, relations, atom table) plus a header with
//! the parameters, the section counts and a fingerprint of the canonical
//! element order. Loading re-derives every table from the stored interval
//! and compares section by section, so a loaded dataset is bit-identical
//! to a freshly built one or the load fails with a data error.

use crate::error::{Error, Result};
use crate::interval::{build_interval, IntervalLattice};
use crate::root_system::{build_root_system, CartanType};
use crate::springer::{build_springer_data, GroupoidData, RegularParams};
use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

pub const FORMAT_VERSION: u32 = 1;

/// Fingerprint of the canonical element order: SHA-256 over the
/// length-prefixed simple-root image keys of all interval elements.
pub fn fingerprint(lat: &IntervalLattice) -> String {
    let mut h = Sha256::new();
    for i in 0..lat.len() as u32 {
        h.update([lat.length(i) as u8]);
        let p = lat.perm(i);
        for &si in &lat.root_system.simple_indices {
            h.update([p.apply(si)]);
        }
    }
    let out = h.finalize();
    out.iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

pub fn save(g: &GroupoidData, path: &Path) -> Result<()> {
    let lat = &g.lattice;
    let rs = &lat.root_system;
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, "garside-dataset {FORMAT_VERSION}");
    let _ = writeln!(w, "type {}", rs.cartan.label());
    let _ = writeln!(
        w,
        "params d={} h={} p={} q={} eta={}",
        g.params.d, g.params.h, g.params.p, g.params.q, g.params.eta
    );
    let _ = writeln!(
        w,
        "counts interval={} objects={} simples={} rels={}",
        lat.len(),
        g.objects.len(),
        g.simples.len(),
        g.rels.len()
    );
    let _ = writeln!(w, "fingerprint {}", fingerprint(lat));

    let _ = writeln!(w, "roots {} {}", rs.roots.len(), rs.dim);
    for r in &rs.roots {
        let coords: Vec<String> = r[..rs.dim].iter().map(|c| c.to_string()).collect();
        let _ = writeln!(w, "{}", coords.join(" "));
    }

    let _ = writeln!(w, "interval {}", lat.len());
    for i in 0..lat.len() as u32 {
        let p = lat.perm(i);
        let images: Vec<String> = (0..rs.roots.len() as u8)
            .map(|k| p.apply(k).to_string())
            .collect();
        let _ = writeln!(w, "{} {}", lat.length(i), images.join(" "));
    }

    let _ = writeln!(w, "objects {}", g.objects.len());
    for &u in &g.objects {
        let _ = writeln!(w, "{u}");
    }

    let _ = writeln!(w, "simples {}", g.simples.len());
    for s in &g.simples {
        let _ = writeln!(w, "{} {} {} {}", s.a, s.b, s.source.0, s.target.0);
    }

    let _ = writeln!(w, "rels {}", g.rels.len());
    for &(x, y, z) in &g.rels {
        let _ = writeln!(w, "{x} {y} {z}");
    }

    let _ = writeln!(w, "atoms {}", g.atoms_by_source.len());
    for list in &g.atoms_by_source {
        let ids: Vec<String> = list.iter().map(|s| s.0.to_string()).collect();
        let _ = writeln!(w, "{}", ids.join(" "));
    }

    std::fs::write(path, out)?;
    Ok(())
}

struct Lines<'a> {
    it: std::str::Lines<'a>,
    lineno: usize,
}

impl<'a> Lines<'a> {
    fn next(&mut self) -> Result<&'a str> {
        self.lineno += 1;
        self.it
            .next()
            .ok_or_else(|| Error::Data(format!("unexpected end of file at line {}", self.lineno)))
    }

    fn expect_section(&mut self, name: &str) -> Result<Vec<&'a str>> {
        let head = self.next()?;
        let mut parts = head.split_whitespace();
        let tag = parts.next().unwrap_or("");
        if tag != name {
            return Err(Error::Data(format!(
                "expected section {name:?} at line {}, found {tag:?}",
                self.lineno
            )));
        }
        Ok(parts.collect())
    }
}

fn parse<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::Data(format!("malformed {what}: {s:?}")))
}

pub fn load(path: &Path) -> Result<GroupoidData> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = Lines { it: text.lines(), lineno: 0 };

    let magic = lines.next()?;
    let Some(ver) = magic.strip_prefix("garside-dataset ") else {
        return Err(Error::Data("not a garside dataset file".into()));
    };
    let ver: u32 = parse(ver.trim(), "format version")?;
    if ver != FORMAT_VERSION {
        return Err(Error::Data(format!(
            "unsupported format version {ver} (expected {FORMAT_VERSION})"
        )));
    }

    let type_line = lines.next()?;
    let cartan = CartanType::parse(
        type_line
            .strip_prefix("type ")
            .ok_or_else(|| Error::Data("missing type header".into()))?,
    )?;

    let params_line = lines.next()?;
    let mut kv = std::collections::HashMap::new();
    for part in params_line
        .strip_prefix("params ")
        .ok_or_else(|| Error::Data("missing params header".into()))?
        .split_whitespace()
    {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Data(format!("malformed params entry {part:?}")))?;
        kv.insert(k.to_string(), v.to_string());
    }
    let d: usize = parse(kv.get("d").map(String::as_str).unwrap_or(""), "d")?;
    let h: usize = parse(kv.get("h").map(String::as_str).unwrap_or(""), "h")?;
    let eta: i64 = parse(kv.get("eta").map(String::as_str).unwrap_or(""), "eta")?;
    let params = RegularParams::with_eta(d, h, eta)?;

    let counts_line = lines.next()?;
    let mut counts = std::collections::HashMap::new();
    for part in counts_line
        .strip_prefix("counts ")
        .ok_or_else(|| Error::Data("missing counts header".into()))?
        .split_whitespace()
    {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Data(format!("malformed counts entry {part:?}")))?;
        counts.insert(k.to_string(), parse::<usize>(v, "count")?);
    }

    let fp_line = lines.next()?;
    let stored_fp = fp_line
        .strip_prefix("fingerprint ")
        .ok_or_else(|| Error::Data("missing fingerprint header".into()))?
        .trim()
        .to_string();

    // roots: validated against the canonical construction
    let rs = Arc::new(build_root_system(cartan)?);
    let head = lines.expect_section("roots")?;
    let nroots: usize = parse(head.first().copied().unwrap_or(""), "root count")?;
    let dim: usize = parse(head.get(1).copied().unwrap_or(""), "root dimension")?;
    if nroots != rs.roots.len() || dim != rs.dim {
        return Err(Error::Data("root section does not match the Cartan type".into()));
    }
    for i in 0..nroots {
        let line = lines.next()?;
        let coords: Vec<i32> = line
            .split_whitespace()
            .map(|c| parse::<i32>(c, "root coordinate"))
            .collect::<Result<_>>()?;
        if coords.len() != dim || coords[..] != rs.roots[i][..dim] {
            return Err(Error::Data(format!("root {i} differs from the canonical root")));
        }
    }

    // interval: lengths and full permutations, matched against a rebuild
    let head = lines.expect_section("interval")?;
    let nint: usize = parse(head.first().copied().unwrap_or(""), "interval count")?;
    if counts.get("interval") != Some(&nint) {
        return Err(Error::Data("interval count mismatch between header and section".into()));
    }
    let lat = build_interval(rs.clone())?;
    if lat.len() != nint {
        return Err(Error::Data(format!(
            "interval count mismatch: file has {nint}, rebuild has {}",
            lat.len()
        )));
    }
    for i in 0..nint {
        let line = lines.next()?;
        let mut it = line.split_whitespace();
        let l: usize = parse(it.next().unwrap_or(""), "element length")?;
        if l != lat.length(i as u32) {
            return Err(Error::Data(format!("length of element {i} differs")));
        }
        let p = lat.perm(i as u32);
        for k in 0..nroots {
            let img: u8 = parse(it.next().unwrap_or(""), "permutation image")?;
            if img != p.apply(k as u8) {
                return Err(Error::Data(format!(
                    "element {i} differs from the canonical interval order"
                )));
            }
        }
    }
    let fp = fingerprint(&lat);
    if fp != stored_fp {
        return Err(Error::Data(format!(
            "fingerprint mismatch: file has {stored_fp}, canonical order has {fp}"
        )));
    }

    let g = build_springer_data(lat, params)?;

    // objects
    let head = lines.expect_section("objects")?;
    let nobj: usize = parse(head.first().copied().unwrap_or(""), "object count")?;
    if nobj != g.objects.len() || counts.get("objects") != Some(&nobj) {
        return Err(Error::Data("object count mismatch".into()));
    }
    for (i, &u) in g.objects.iter().enumerate() {
        let stored: u32 = parse(lines.next()?.trim(), "object index")?;
        if stored != u {
            return Err(Error::Data(format!("object {i} differs")));
        }
    }

    // simples
    let head = lines.expect_section("simples")?;
    let nsim: usize = parse(head.first().copied().unwrap_or(""), "simple count")?;
    if nsim != g.simples.len() || counts.get("simples") != Some(&nsim) {
        return Err(Error::Data("simple count mismatch".into()));
    }
    for (i, s) in g.simples.iter().enumerate() {
        let line = lines.next()?;
        let vals: Vec<u32> = line
            .split_whitespace()
            .map(|v| parse::<u32>(v, "simple field"))
            .collect::<Result<_>>()?;
        if vals != [s.a, s.b, s.source.0, s.target.0] {
            return Err(Error::Data(format!("simple {i} differs")));
        }
    }

    // rels
    let head = lines.expect_section("rels")?;
    let nrel: usize = parse(head.first().copied().unwrap_or(""), "relation count")?;
    if nrel != g.rels.len() || counts.get("rels") != Some(&nrel) {
        return Err(Error::Data("relation count mismatch".into()));
    }
    for (i, &(x, y, z)) in g.rels.iter().enumerate() {
        let line = lines.next()?;
        let vals: Vec<u32> = line
            .split_whitespace()
            .map(|v| parse::<u32>(v, "relation field"))
            .collect::<Result<_>>()?;
        if vals != [x, y, z] {
            return Err(Error::Data(format!("relation {i} differs")));
        }
    }

    // atom table
    let head = lines.expect_section("atoms")?;
    let natom: usize = parse(head.first().copied().unwrap_or(""), "atom table size")?;
    if natom != g.atoms_by_source.len() {
        return Err(Error::Data("atom table size mismatch".into()));
    }
    for (i, list) in g.atoms_by_source.iter().enumerate() {
        let line = lines.next()?;
        let vals: Vec<u32> = line
            .split_whitespace()
            .map(|v| parse::<u32>(v, "atom id"))
            .collect::<Result<_>>()?;
        let expect: Vec<u32> = list.iter().map(|s| s.0).collect();
        if vals != expect {
            return Err(Error::Data(format!("atom list of object {i} differs")));
        }
    }

    Ok(g)
}
