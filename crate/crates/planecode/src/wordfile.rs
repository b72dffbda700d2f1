//! The codeword file format: a header line `p n`, then one word per line
//! as n space-separated residues in canonical point order. Plain decimal
//! text, diffable and bit-exact.

use std::io::{BufRead, Write};

use crate::code::Codeword;
use crate::error::{Error, Result};
use crate::fp::Fp;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordFile {
    pub p: u64,
    pub n: usize,
    pub words: Vec<Codeword>,
}

pub fn write_words(out: &mut impl Write, p: u64, words: &[Codeword]) -> Result<()> {
    let n = (p * p + p + 1) as usize;
    writeln!(out, "{p} {n}")?;
    for w in words {
        debug_assert_eq!(w.len(), n);
        writeln!(out, "{}", w.to_text())?;
    }
    Ok(())
}

pub fn read_words(input: impl BufRead) -> Result<WordFile> {
    let mut lines = input.lines().enumerate();
    let parse_err = |line: usize, message: String| Error::Parse {
        line: line + 1,
        message,
    };

    let (line_no, header) = lines
        .next()
        .ok_or_else(|| parse_err(0, "empty input, expected a `p n` header".into()))?;
    let header = header?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 2 {
        return Err(parse_err(line_no, format!("expected `p n`, got {header:?}")));
    }
    let p: u64 = parts[0]
        .parse()
        .map_err(|_| parse_err(line_no, format!("bad prime {:?}", parts[0])))?;
    let n: usize = parts[1]
        .parse()
        .map_err(|_| parse_err(line_no, format!("bad length {:?}", parts[1])))?;
    if n != (p * p + p + 1) as usize {
        return Err(parse_err(
            line_no,
            format!("length {n} differs from p^2+p+1 = {}", p * p + p + 1),
        ));
    }
    let fp = Fp::new(p).map_err(|e| parse_err(line_no, e.to_string()))?;

    let mut words = Vec::new();
    for (line_no, line) in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let mut entries = Vec::with_capacity(n);
        for tok in line.split_whitespace() {
            let v: u64 = tok
                .parse()
                .map_err(|_| parse_err(line_no, format!("bad residue {tok:?}")))?;
            if v >= p {
                return Err(parse_err(line_no, format!("residue {v} not below p = {p}")));
            }
            entries.push(v as u8);
        }
        if entries.len() != n {
            return Err(parse_err(
                line_no,
                format!("expected {n} residues, got {}", entries.len()),
            ));
        }
        words.push(Codeword::from_residues(&fp, entries).map_err(|e| parse_err(line_no, e.to_string()))?);
    }
    Ok(WordFile { p, n, words })
}
