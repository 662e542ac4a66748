//! Line-oriented text formats.
//!
//! Every format starts with a `<kind> v1` header. Blank lines and lines
//! starting with `#` are ignored; anything after the last expected line is
//! rejected.
//!
//! ```text
//! isg v1            psh v1            act v1            top v1        bun v1
//! n 2               E 2               <isg v1 block>    points 2      <top v1 block>
//! table             <2 rows>          X 1               opens 3       <top v1 block>
//! 0 0               X 1               p 1               -             pi 0 1
//! 0 1               p 1               action            0
//!                   action            0 0               0 1
//!                   0 0
//! ```

use std::fmt::Write;

use crate::actions::SupportedAction;
use crate::error::{Error, Result};
use crate::munn::MunnSemigroup;
use crate::presheaf::{Presheaf, Semilattice};
use crate::topology::{validate_bundle, EtaleBundle, FiniteSpace};
use crate::{Id, InverseSemigroup};

/// Any parsed file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Semigroup(InverseSemigroup),
    Presheaf(Presheaf),
    Action(SupportedAction),
    Space(FiniteSpace),
    Bundle(EtaleBundle),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Semigroup(_) => "isg",
            Document::Presheaf(_) => "psh",
            Document::Action(_) => "act",
            Document::Space(_) => "top",
            Document::Bundle(_) => "bun",
        }
    }
}

/// Tokenised lines with their 1-based line numbers.
struct Lines {
    lines: Vec<(usize, Vec<String>)>,
    pos: usize,
}

impl Lines {
    fn new(text: &str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .map(|(i, l)| (i, l.split_whitespace().map(str::to_owned).collect()))
            .collect();
        Lines { lines, pos: 0 }
    }

    fn next(&mut self, what: &str) -> Result<(usize, Vec<String>)> {
        let line = self.lines.get(self.pos).cloned().ok_or_else(|| malformed(0, &format!("expected {what}, found end of input")))?;
        self.pos += 1;
        Ok(line)
    }

    fn peek_header(&self) -> Option<&str> {
        self.lines.get(self.pos).and_then(|(_, t)| t.first()).map(String::as_str)
    }

    /// A line consisting of exactly the given words.
    fn keyword(&mut self, words: &[&str]) -> Result<()> {
        let (n, toks) = self.next(&words.join(" "))?;
        if toks.iter().map(String::as_str).ne(words.iter().copied()) {
            return Err(malformed(n, &format!("expected '{}'", words.join(" "))));
        }
        Ok(())
    }

    /// `<key> <count>`.
    fn count(&mut self, key: &str) -> Result<usize> {
        let (n, toks) = self.next(key)?;
        match toks.as_slice() {
            [k, v] if k == key => v.parse().map_err(|_| malformed(n, &format!("bad count '{v}'"))),
            _ => Err(malformed(n, &format!("expected '{key} <count>'"))),
        }
    }

    /// `<key> id…` with exactly `len` ids below `bound`.
    fn keyed_ids(&mut self, key: &str, len: usize, bound: usize) -> Result<Vec<Id>> {
        let (n, toks) = self.next(key)?;
        if toks.first().map(String::as_str) != Some(key) {
            return Err(malformed(n, &format!("expected '{key}'")));
        }
        ids(n, &toks[1..], len, bound)
    }

    /// `rows` lines of `len` ids below `bound`.
    fn table(&mut self, rows: usize, len: usize, bound: usize) -> Result<Vec<Vec<Id>>> {
        (0..rows)
            .map(|_| {
                let (n, toks) = self.next("table row")?;
                ids(n, &toks, len, bound)
            })
            .collect()
    }

    fn finish(&self) -> Result<()> {
        match self.lines.get(self.pos) {
            Some((n, _)) => Err(malformed(*n, "trailing content")),
            None => Ok(()),
        }
    }
}

fn malformed(line: usize, msg: &str) -> Error {
    if line == 0 {
        Error::Malformed(msg.to_owned())
    } else {
        Error::Malformed(format!("line {line}: {msg}"))
    }
}

fn ids(line: usize, toks: &[String], len: usize, bound: usize) -> Result<Vec<Id>> {
    if toks.len() != len {
        return Err(malformed(line, &format!("expected {len} ids, found {}", toks.len())));
    }
    toks.iter()
        .map(|t| {
            let id: Id = t.parse().map_err(|_| malformed(line, &format!("bad id '{t}'")))?;
            if id >= bound {
                return Err(Error::OutOfRange { id, size: bound });
            }
            Ok(id)
        })
        .collect()
}

fn read_isg(lines: &mut Lines) -> Result<InverseSemigroup> {
    lines.keyword(&["isg", "v1"])?;
    let n = lines.count("n")?;
    if n == 0 {
        return Err(Error::Malformed("empty semigroup".into()));
    }
    lines.keyword(&["table"])?;
    InverseSemigroup::new(lines.table(n, n, n)?)
}

fn read_top(lines: &mut Lines) -> Result<FiniteSpace> {
    lines.keyword(&["top", "v1"])?;
    let m = lines.count("points")?;
    let k = lines.count("opens")?;
    let opens = (0..k)
        .map(|_| {
            let (n, toks) = lines.next("open set")?;
            if toks.len() == 1 && toks[0] == "-" {
                return Ok(0);
            }
            let len = toks.len();
            Ok(ids(n, &toks, len, m.min(32))?.into_iter().fold(0u32, |a, x| a | 1 << x))
        })
        .collect::<Result<Vec<u32>>>()?;
    FiniteSpace::new(m, opens)
}

/// Carrier and support lines shared by `psh` and `act`.
fn read_carrier(lines: &mut Lines, k: usize) -> Result<(Vec<Id>, Vec<Vec<Id>>)> {
    let m = lines.count("X")?;
    let support = lines.keyed_ids("p", m, k)?;
    lines.keyword(&["action"])?;
    let act = lines.table(m, k, m)?;
    Ok((support, act))
}

pub fn parse_isg(text: &str) -> Result<InverseSemigroup> {
    let mut lines = Lines::new(text);
    let s = read_isg(&mut lines)?;
    lines.finish()?;
    Ok(s)
}

pub fn parse_psh(text: &str) -> Result<Presheaf> {
    let mut lines = Lines::new(text);
    lines.keyword(&["psh", "v1"])?;
    let k = lines.count("E")?;
    let lattice = Semilattice::from_rows(lines.table(k, k, k)?)?;
    let (support, act) = read_carrier(&mut lines, k)?;
    lines.finish()?;
    Presheaf::new(lattice, support, act)
}

pub fn parse_act(text: &str) -> Result<SupportedAction> {
    let mut lines = Lines::new(text);
    lines.keyword(&["act", "v1"])?;
    let s = read_isg(&mut lines)?;
    let (support, act) = read_carrier(&mut lines, s.len())?;
    lines.finish()?;
    SupportedAction::new(s, support, act)
}

pub fn parse_top(text: &str) -> Result<FiniteSpace> {
    let mut lines = Lines::new(text);
    let x = read_top(&mut lines)?;
    lines.finish()?;
    Ok(x)
}

pub fn parse_bun(text: &str) -> Result<EtaleBundle> {
    let mut lines = Lines::new(text);
    lines.keyword(&["bun", "v1"])?;
    let total = read_top(&mut lines)?;
    let base = read_top(&mut lines)?;
    let pi = lines.keyed_ids("pi", total.points(), base.points())?;
    lines.finish()?;
    validate_bundle(total, base, pi)
}

/// Dispatches on the header line.
pub fn parse_any(text: &str) -> Result<Document> {
    let lines = Lines::new(text);
    match lines.peek_header() {
        Some("isg") => parse_isg(text).map(Document::Semigroup),
        Some("psh") => parse_psh(text).map(Document::Presheaf),
        Some("act") => parse_act(text).map(Document::Action),
        Some("top") => parse_top(text).map(Document::Space),
        Some("bun") => parse_bun(text).map(Document::Bundle),
        Some(other) => Err(Error::Malformed(format!("unknown format '{other}'"))),
        None => Err(Error::Malformed("empty input".into())),
    }
}

fn push_row(out: &mut String, row: &[Id]) {
    let words: Vec<String> = row.iter().map(Id::to_string).collect();
    out.push_str(&words.join(" "));
    out.push('\n');
}

fn push_table(out: &mut String, rows: &[Vec<Id>]) {
    for row in rows {
        push_row(out, row);
    }
}

pub fn write_isg(s: &InverseSemigroup) -> String {
    let mut out = format!("isg v1\nn {}\ntable\n", s.len());
    push_table(&mut out, &s.rows());
    out
}

fn push_carrier(out: &mut String, support: &[Id], rows: &[Vec<Id>]) {
    let _ = writeln!(out, "X {}", support.len());
    out.push('p');
    for x in support {
        let _ = write!(out, " {x}");
    }
    out.push_str("\naction\n");
    push_table(out, rows);
}

pub fn write_psh(p: &Presheaf) -> String {
    let lat = p.lattice().semigroup();
    let mut out = format!("psh v1\nE {}\n", lat.len());
    push_table(&mut out, &lat.rows());
    push_carrier(&mut out, p.supports(), &p.rows());
    out
}

pub fn write_act(a: &SupportedAction) -> String {
    let mut out = String::from("act v1\n");
    out.push_str(&write_isg(a.semigroup()));
    push_carrier(&mut out, a.supports(), &a.rows());
    out
}

pub fn write_top(x: &FiniteSpace) -> String {
    let mut out = format!("top v1\npoints {}\nopens {}\n", x.points(), x.opens().len());
    for &u in x.opens() {
        if u == 0 {
            out.push_str("-\n");
        } else {
            push_row(&mut out, &crate::topology::members(u).collect::<Vec<_>>());
        }
    }
    out
}

pub fn write_bun(b: &EtaleBundle) -> String {
    let mut out = String::from("bun v1\n");
    out.push_str(&write_top(b.total()));
    out.push_str(&write_top(b.base()));
    out.push_str("pi");
    for x in b.pi() {
        let _ = write!(out, " {x}");
    }
    out.push('\n');
    out
}

pub fn write_document(doc: &Document) -> String {
    match doc {
        Document::Semigroup(s) => write_isg(s),
        Document::Presheaf(p) => write_psh(p),
        Document::Action(a) => write_act(a),
        Document::Space(x) => write_top(x),
        Document::Bundle(b) => write_bun(b),
    }
}

/// One line per element: `id e f alpha theta`, maps as `x>y,…` or `-`.
pub fn write_munn_sidecar(t: &MunnSemigroup) -> String {
    let mut out = String::from("# id e f alpha theta\n");
    for (id, m) in t.elements().iter().enumerate() {
        let _ = writeln!(out, "{id} {} {} {} {}", m.domain, m.range, m.iso.alpha, m.iso.theta);
    }
    out
}
