//! Line-oriented text formats: poset files, cover-pair files, and the
//! machine-readable result records.

use std::fmt;

use nmu_core::{ChainCover, CoverPair, Element, Poset};
use serde::Serialize;

#[derive(Debug)]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for FormatError {}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError {
        line,
        message: message.into(),
    }
}

/// Lines with content: (1-based line number, whitespace-split fields).
fn content_lines(text: &str) -> Vec<(usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
        .map(|(i, l)| (i, l.split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, f)| !f.is_empty())
        .collect()
}

fn parse_element(line: usize, s: &str) -> Result<Element, FormatError> {
    s.parse::<Element>()
        .ok()
        .filter(|&e| e >= 1)
        .ok_or_else(|| err(line, format!("expected a positive element id, got {s:?}")))
}

/// Parse a poset file: `poset <name>`, `elements <n>`, then `cover <u> <v>`
/// lines. `#` starts a comment.
pub fn parse_poset(text: &str) -> Result<(String, Poset), FormatError> {
    let lines = content_lines(text);
    let mut it = lines.iter();
    let (l, f) = it
        .next()
        .ok_or_else(|| err(0, "empty file; expected `poset <name>`"))?;
    if f[0] != "poset" || f.len() != 2 {
        return Err(err(*l, "expected header `poset <name>`"));
    }
    let name = f[1].to_string();
    let (l, f) = it
        .next()
        .ok_or_else(|| err(*l, "expected `elements <n>` after the header"))?;
    if f[0] != "elements" || f.len() != 2 {
        return Err(err(*l, "expected `elements <n>`"));
    }
    let n: usize = f[1]
        .parse()
        .map_err(|_| err(*l, format!("bad element count {:?}", f[1])))?;
    let mut covers = Vec::new();
    for (l, f) in it {
        if f[0] != "cover" || f.len() != 3 {
            return Err(err(*l, format!("expected `cover <u> <v>`, got {:?}", f.join(" "))));
        }
        covers.push((parse_element(*l, f[1])?, parse_element(*l, f[2])?));
    }
    let poset = Poset::build(n, &covers).map_err(|e| err(0, e.to_string()))?;
    Ok((name, poset))
}

pub fn write_poset(name: &str, p: &Poset) -> String {
    let mut out = format!("poset {name}\nelements {}\n", p.n());
    for &(u, v) in p.covers() {
        out.push_str(&format!("cover {u} {v}\n"));
    }
    out
}

/// Parse a cover-pair file: two blocks separated by `---`, each
/// `cover <name>` followed by `chain <e1> <e2> ...` lines.
pub fn parse_cover_pair(text: &str, p: &Poset) -> Result<CoverPair, FormatError> {
    let mut blocks: Vec<Vec<(usize, Vec<&str>)>> = vec![Vec::new()];
    for (l, f) in content_lines(text) {
        if f == ["---"] {
            blocks.push(Vec::new());
        } else {
            blocks.last_mut().unwrap().push((l, f));
        }
    }
    if blocks.len() != 2 {
        return Err(err(
            0,
            format!("expected two cover blocks separated by `---`, got {}", blocks.len()),
        ));
    }
    let mut covers = Vec::new();
    for block in &blocks {
        let (l, f) = block
            .first()
            .ok_or_else(|| err(0, "empty cover block; expected `cover <name>`"))?;
        if f[0] != "cover" || f.len() != 2 {
            return Err(err(*l, "expected `cover <name>` at the start of a block"));
        }
        let mut chains: Vec<Vec<Element>> = Vec::new();
        for (l, f) in &block[1..] {
            if f[0] != "chain" || f.len() < 2 {
                return Err(err(*l, "expected `chain <e1> <e2> ...`"));
            }
            let chain = f[1..]
                .iter()
                .map(|s| parse_element(*l, s))
                .collect::<Result<Vec<_>, _>>()?;
            chains.push(chain);
        }
        covers.push(ChainCover::new(p, &chains).map_err(|e| err(*l, e.to_string()))?);
    }
    let second = covers.pop().unwrap();
    let first = covers.pop().unwrap();
    Ok(CoverPair::from_covers(first, second))
}

pub fn write_cover_pair(pair: &CoverPair) -> String {
    let mut out = String::new();
    for (i, cover) in [pair.first(), pair.second()].iter().enumerate() {
        if i == 1 {
            out.push_str("---\n");
        }
        out.push_str(&format!("cover c{}\n", i + 1));
        for chain in cover.chains() {
            let ids: Vec<String> = chain.iter().map(|e| e.to_string()).collect();
            out.push_str(&format!("chain {}\n", ids.join(" ")));
        }
    }
    out
}

/// One machine-readable classification record.
#[derive(Serialize)]
pub struct ResultRecord {
    pub key: String,
    pub n: usize,
    pub n2: bool,
    pub n2_prime: bool,
    pub n2_doubleprime: bool,
    pub brute_force_n2: Option<bool>,
    pub agree: Option<bool>,
}

pub fn key_string(key: &[u64]) -> String {
    key.iter()
        .map(|w| format!("{w:016x}"))
        .collect::<Vec<_>>()
        .join(".")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_round_trip() {
        let p = Poset::grid(2, 3);
        let text = write_poset("grid23", &p);
        let (name, q) = parse_poset(&text).unwrap();
        assert_eq!(name, "grid23");
        assert_eq!(p, q);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "poset x\nelements 3\ncover 1 2\ncover 2\n";
        let e = parse_poset(bad).unwrap_err();
        assert_eq!(e.line, 4);
        assert!(parse_poset("").is_err());
        assert!(parse_poset("poset x\nelements 2\ncover 2 1\ncover 1 2\n").is_err());
    }

    #[test]
    fn comments_and_blanks_ignored() {
        let text = "# a poset\nposet p # named p\n\nelements 2\ncover 1 2\n";
        let (_, p) = parse_poset(text).unwrap();
        assert_eq!(p.n(), 2);
        assert_eq!(p.covers(), &[(1, 2)]);
    }

    #[test]
    fn cover_pair_round_trip() {
        let p = Poset::grid(2, 2);
        let text = "cover rows\nchain 1 2\nchain 3 4\n---\ncover cols\nchain 1 3\nchain 2 4\n";
        let pair = parse_cover_pair(text, &p).unwrap();
        let again = parse_cover_pair(&write_cover_pair(&pair), &p).unwrap();
        assert_eq!(pair, again);
    }

    #[test]
    fn cover_pair_requires_two_blocks() {
        let p = Poset::chain(2);
        assert!(parse_cover_pair("cover a\nchain 1 2\n", &p).is_err());
    }
}
