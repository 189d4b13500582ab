//! Text forms of geometric reals, sequences, matrices and reports.
//!
//! A geometric real prints either as its exponent (`Repr::Exponent`, the
//! default) or as its ordinary value (`Repr::Value`), with 12 significant
//! digits. Integer exponents print without a decimal point, so files built
//! from integer exponents are byte-stable. A token of the form `e^t` always
//! denotes an exponent, whatever the representation.

use std::fmt;
use std::fmt::Write as _;

use geoarith::{ChainReport, DivisorMatrix, GReal, GSeq, MembershipReport, Mode, Space, Verdict};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Repr {
    #[default]
    Exponent,
    Value,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based line number; `0` for whole-input problems.
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError { line, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

/// Formats a finite number with 12 significant digits.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if x == x.trunc() && x.abs() < 1e15 {
        return format!("{}", x as i64);
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        // rounding may have produced a whole number, e.g. 0.99999999999999
        let digits = (11 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", digits, x))
    } else {
        format!("{}e{}", trim_zeros(mantissa.to_string()), exp)
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// `e^t` form, used in reports.
pub fn exponent_form(x: GReal) -> String {
    format!("e^{}", format_number(x.exponent()))
}

pub fn render(x: GReal, repr: Repr) -> String {
    match repr {
        Repr::Exponent => format_number(x.exponent()),
        Repr::Value => format_number(x.value()),
    }
}

/// Parses one token as a geometric real.
pub fn parse_greal(token: &str, repr: Repr) -> Result<GReal, String> {
    let token = token.trim();
    if token == "e" {
        return Ok(GReal::ONE);
    }
    let (text, as_exponent) = match token.strip_prefix("e^") {
        Some(rest) => (rest.trim_start_matches('(').trim_end_matches(')'), true),
        None => (token, repr == Repr::Exponent),
    };
    let number: f64 = text
        .parse()
        .map_err(|_| format!("malformed number `{token}`"))?;
    let result = if as_exponent {
        GReal::from_exponent(number)
    } else {
        GReal::from_value(number)
    };
    result.map_err(|e| format!("`{token}`: {e}"))
}

/// Content lines with their 1-based numbers: comments stripped, blanks
/// skipped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

/// Parses a sequence file: one term per line.
pub fn parse_gseq(text: &str, repr: Repr) -> Result<GSeq, ParseError> {
    let mut terms = Vec::new();
    for (line_no, line) in content_lines(text) {
        let mut tokens = line.split_whitespace();
        let token = tokens.next().expect("non-empty line");
        if tokens.next().is_some() {
            return Err(ParseError::new(line_no, "expected one term per line"));
        }
        terms.push(parse_greal(token, repr).map_err(|m| ParseError::new(line_no, m))?);
    }
    GSeq::new(terms).map_err(|_| ParseError::new(0, "empty input: no sequence terms"))
}

pub fn write_gseq(f: &GSeq, repr: Repr) -> String {
    let mut out = String::new();
    for &x in f {
        out.push_str(&render(x, repr));
        out.push('\n');
    }
    out
}

/// Parses a matrix file: a size line `N`, then `N` rows of `N` entries.
pub fn parse_matrix(text: &str, repr: Repr) -> Result<DivisorMatrix, ParseError> {
    let mut lines = content_lines(text);
    let (size_line, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(0, "empty input: missing matrix size"))?;
    let size: usize = header
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| ParseError::new(size_line, format!("invalid matrix size `{header}`")))?;
    let mut entries = Vec::with_capacity(size * size);
    let mut last_line = size_line;
    for row in 0..size {
        let (line_no, line) = lines.next().ok_or_else(|| {
            ParseError::new(last_line, format!("expected {size} rows, found {row}"))
        })?;
        last_line = line_no;
        let before = entries.len();
        for token in line.split_whitespace() {
            entries.push(parse_greal(token, repr).map_err(|m| ParseError::new(line_no, m))?);
        }
        let found = entries.len() - before;
        if found != size {
            return Err(ParseError::new(line_no, format!("expected {size} entries, found {found}")));
        }
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(ParseError::new(line_no, "unexpected content after the last row"));
    }
    DivisorMatrix::new(size, entries).map_err(|e| ParseError::new(0, e.to_string()))
}

pub fn write_matrix(m: &DivisorMatrix, repr: Repr) -> String {
    let mut out = format!("{}\n", m.size());
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(|&x| render(x, repr)).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

fn space_tag(space: Space) -> &'static str {
    match space {
        Space::AC => "AC",
        Space::AS => "AS",
        Space::PHI => "PHI",
    }
}

/// `space=.. verdict=.. witness=.. residual=e^.. N=.. mode=..`, followed by
/// `epsilon=e^..` in epsilon mode.
pub fn report_line(r: &MembershipReport) -> String {
    let mut out = format!(
        "space={} verdict={} witness={} residual={} N={} mode={}",
        space_tag(r.space),
        match r.verdict {
            Verdict::Consistent => "consistent",
            Verdict::Refuted => "refuted",
        },
        r.witness.map_or_else(|| "-".to_string(), |w| w.to_string()),
        exponent_form(r.max_residual),
        r.prefix_length,
        match r.mode {
            Mode::Exact(_) => "exact",
            Mode::Epsilon(_) => "epsilon",
        },
    );
    if let Mode::Epsilon(eps) = r.mode {
        let _ = write!(out, " epsilon={}", exponent_form(eps));
    }
    out
}

pub fn chain_line(r: &ChainReport) -> String {
    let chain: Vec<String> = r.chain.iter().map(|n| n.to_string()).collect();
    let extracted: Vec<String> = r.extracted.iter().map(|&x| exponent_form(x)).collect();
    format!(
        "chain={} extracted={} cauchy={} limit={}",
        chain.join(","),
        extracted.join(","),
        r.is_cauchy,
        r.limit.map_or_else(|| "-".to_string(), exponent_form),
    )
}
