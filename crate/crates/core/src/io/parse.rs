use std::collections::BTreeMap;
use std::fmt;

use super::model::{Linear, ModelFile, Observable, Sweep};
use crate::C64;

/// Largest accepted `levels` value.
pub const MAX_LEVELS: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagnosticKind {
    Lexical,
    Syntax,
    Semantic,
}

impl fmt::Display for DiagnosticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Lexical => "lexical",
            Self::Syntax => "syntax",
            Self::Semantic => "semantic",
        })
    }
}

/// A located problem in a model file (1-based line and column).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub kind: DiagnosticKind,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: {} error: {}",
            self.line, self.column, self.kind, self.message
        )
    }
}

/// Every diagnostic produced while parsing one file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseErrors(pub Vec<Diagnostic>);

impl fmt::Display for ParseErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, d) in self.0.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseErrors {}

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn is_token_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '+' | '-' | ':')
}

/// Split a line into tokens, stopping at `#`.
fn lex<'a>(line: &'a str, line_no: usize, diags: &mut Vec<Diagnostic>) -> Option<Vec<Token<'a>>> {
    let mut tokens = Vec::new();
    let mut start: Option<(usize, usize)> = None; // (byte offset, column)
    let mut ok = true;
    for (col0, (byte, c)) in line.char_indices().enumerate() {
        let column = col0 + 1;
        if c == '#' {
            if let Some((s, col)) = start.take() {
                tokens.push(Token {
                    text: &line[s..byte],
                    column: col,
                });
            }
            return ok.then_some(tokens);
        }
        if c.is_whitespace() {
            if let Some((s, col)) = start.take() {
                tokens.push(Token {
                    text: &line[s..byte],
                    column: col,
                });
            }
        } else if is_token_char(c) {
            if start.is_none() {
                start = Some((byte, column));
            }
        } else {
            diags.push(Diagnostic {
                line: line_no,
                column,
                kind: DiagnosticKind::Lexical,
                message: format!("unexpected character {c:?}"),
            });
            ok = false;
            start = None;
        }
    }
    if let Some((s, col)) = start {
        tokens.push(Token {
            text: &line[s..],
            column: col,
        });
    }
    ok.then_some(tokens)
}

/// `[+-]? (digits [. digits?] | . digits) ([eE] [+-]? digits)?`
fn is_real_literal(s: &str) -> bool {
    let b = s.as_bytes();
    let mut i = 0;
    if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
        i += 1;
    }
    let int_start = i;
    while i < b.len() && b[i].is_ascii_digit() {
        i += 1;
    }
    let mut digits = i - int_start;
    if i < b.len() && b[i] == b'.' {
        i += 1;
        let frac_start = i;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        digits += i - frac_start;
    }
    if digits == 0 {
        return false;
    }
    if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
        i += 1;
        if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
            i += 1;
        }
        let exp_start = i;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        if i == exp_start {
            return false;
        }
    }
    i == b.len()
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct Entry<T> {
    value: Linear<T>,
    line: usize,
    column: usize,
}

struct Parser {
    diags: Vec<Diagnostic>,
    line: usize,
}

impl Parser {
    fn error(&mut self, column: usize, kind: DiagnosticKind, message: impl Into<String>) {
        self.diags.push(Diagnostic {
            line: self.line,
            column,
            kind,
            message: message.into(),
        });
    }

    fn real(&mut self, tok: Token<'_>, what: &str) -> Option<f64> {
        if !is_real_literal(tok.text) {
            self.error(
                tok.column,
                DiagnosticKind::Syntax,
                format!("expected real number for {what}, found `{}`", tok.text),
            );
            return None;
        }
        match tok.text.parse::<f64>() {
            Ok(v) if v.is_finite() => Some(v),
            _ => {
                self.error(
                    tok.column,
                    DiagnosticKind::Semantic,
                    format!("{what} `{}` is out of range", tok.text),
                );
                None
            }
        }
    }

    fn complex(&mut self, tok: Token<'_>, what: &str) -> Option<C64> {
        match tok.text.split_once(':') {
            None => self.real(tok, what).map(|re| C64::new(re, 0.0)),
            Some((re, im)) => {
                let re_tok = Token {
                    text: re,
                    column: tok.column,
                };
                let im_tok = Token {
                    text: im,
                    column: tok.column + re.len() + 1,
                };
                let re = self.real(re_tok, what);
                let im = self.real(im_tok, what);
                Some(C64::new(re?, im?))
            }
        }
    }

    fn int(&mut self, tok: Token<'_>, what: &str) -> Option<usize> {
        if tok.text.is_empty() || !tok.text.bytes().all(|b| b.is_ascii_digit()) {
            self.error(
                tok.column,
                DiagnosticKind::Syntax,
                format!("expected integer for {what}, found `{}`", tok.text),
            );
            return None;
        }
        match tok.text.parse::<usize>() {
            Ok(v) => Some(v),
            Err(_) => {
                self.error(
                    tok.column,
                    DiagnosticKind::Semantic,
                    format!("{what} `{}` is too large", tok.text),
                );
                None
            }
        }
    }

    fn level(&mut self, tok: Token<'_>, n: usize) -> Option<usize> {
        let v = self.int(tok, "level index")?;
        if v == 0 || v > n {
            self.error(
                tok.column,
                DiagnosticKind::Semantic,
                format!("level index {v} out of range 1..={n}"),
            );
            return None;
        }
        Some(v)
    }

    /// Check the token count of a declaration; `min..=max` operands.
    fn arity(&mut self, toks: &[Token<'_>], min: usize, max: usize, usage: &str) -> bool {
        let operands = toks.len() - 1;
        if operands < min {
            let column = toks.last().map(|t| t.column + t.text.len()).unwrap_or(1);
            self.error(
                column,
                DiagnosticKind::Syntax,
                format!("missing operand; expected `{usage}`"),
            );
            return false;
        }
        if operands > max {
            self.error(
                toks[max + 1].column,
                DiagnosticKind::Syntax,
                format!("unexpected `{}`; expected `{usage}`", toks[max + 1].text),
            );
            return false;
        }
        true
    }
}

fn insert<T>(
    p: &mut Parser,
    table: &mut BTreeMap<(usize, usize), Entry<T>>,
    keyword: &str,
    key: (usize, usize),
    value: Linear<T>,
    column: usize,
) {
    if let Some(prev) = table.get(&key) {
        let msg = format!(
            "duplicate entry `{keyword} {} {}` (first given on line {})",
            key.0, key.1, prev.line
        );
        p.error(column, DiagnosticKind::Semantic, msg);
        return;
    }
    table.insert(
        key,
        Entry {
            value,
            line: p.line,
            column,
        },
    );
}

/// Parse a model description.
pub fn parse_model(text: &str) -> Result<ModelFile, ParseErrors> {
    let mut p = Parser {
        diags: Vec::new(),
        line: 0,
    };
    let mut levels: Option<usize> = None;
    let mut levels_line = 0;
    let mut ham: BTreeMap<(usize, usize), Entry<C64>> = BTreeMap::new();
    let mut src: BTreeMap<(usize, usize), Entry<f64>> = BTreeMap::new();
    let mut deph: BTreeMap<(usize, usize), Entry<f64>> = BTreeMap::new();
    let mut sweep: Option<(Sweep, usize)> = None;
    let mut observables: Vec<Observable> = Vec::new();
    let mut missing_levels_reported = false;

    for (idx, raw) in text.lines().enumerate() {
        p.line = idx + 1;
        let Some(toks) = lex(raw, p.line, &mut p.diags) else {
            continue;
        };
        let Some(head) = toks.first().copied() else {
            continue;
        };

        if head.text == "levels" {
            if !p.arity(&toks, 1, 1, "levels INT") {
                continue;
            }
            let Some(n) = p.int(toks[1], "levels") else {
                continue;
            };
            if levels.is_some() {
                let msg = format!("duplicate levels declaration (first on line {levels_line})");
                p.error(head.column, DiagnosticKind::Semantic, msg);
            } else if n == 0 || n > MAX_LEVELS {
                p.error(
                    toks[1].column,
                    DiagnosticKind::Semantic,
                    format!("levels must lie in 1..={MAX_LEVELS}, got {n}"),
                );
                levels = Some(0);
                levels_line = p.line;
            } else {
                levels = Some(n);
                levels_line = p.line;
            }
            continue;
        }

        if !matches!(head.text, "ham" | "src" | "deph" | "sweep" | "observe") {
            p.error(
                head.column,
                DiagnosticKind::Syntax,
                format!("unknown declaration `{}`", head.text),
            );
            continue;
        }
        let n = match levels {
            Some(n) => n,
            None => {
                if !missing_levels_reported {
                    p.error(
                        head.column,
                        DiagnosticKind::Syntax,
                        "missing levels declaration",
                    );
                    missing_levels_reported = true;
                }
                continue;
            }
        };

        match head.text {
            "ham" => {
                if !p.arity(&toks, 3, 4, "ham INT INT CPX [CPX]") {
                    continue;
                }
                let i = p.level(toks[1], n);
                let j = p.level(toks[2], n);
                let c0 = p.complex(toks[3], "coefficient");
                let c1 = match toks.get(4) {
                    Some(t) => p.complex(*t, "coefficient"),
                    None => Some(C64::new(0.0, 0.0)),
                };
                if let (Some(i), Some(j), Some(c0), Some(c1)) = (i, j, c0, c1) {
                    insert(&mut p, &mut ham, "ham", (i, j), Linear { c0, c1 }, head.column);
                }
            }
            "src" | "deph" => {
                let usage = format!("{} INT INT REAL [REAL]", head.text);
                if !p.arity(&toks, 3, 4, &usage) {
                    continue;
                }
                let i = p.level(toks[1], n);
                let j = p.level(toks[2], n);
                let c0 = p.real(toks[3], "coefficient");
                let c1 = match toks.get(4) {
                    Some(t) => p.real(*t, "coefficient"),
                    None => Some(0.0),
                };
                let (Some(i), Some(j), Some(c0), Some(c1)) = (i, j, c0, c1) else {
                    continue;
                };
                if head.text == "src" {
                    insert(&mut p, &mut src, "src", (i, j), Linear { c0, c1 }, head.column);
                } else if i == j {
                    p.error(
                        toks[1].column,
                        DiagnosticKind::Semantic,
                        format!("dephasing on the diagonal (deph {i} {i}) is not allowed"),
                    );
                } else {
                    insert(&mut p, &mut deph, "deph", (i, j), Linear { c0, c1 }, head.column);
                }
            }
            "sweep" => {
                if !p.arity(&toks, 4, 4, "sweep IDENT REAL REAL INT") {
                    continue;
                }
                let name = toks[1];
                if !is_ident(name.text) {
                    p.error(
                        name.column,
                        DiagnosticKind::Syntax,
                        format!("expected identifier, found `{}`", name.text),
                    );
                }
                let from = p.real(toks[2], "sweep start");
                let to = p.real(toks[3], "sweep end");
                let points = p.int(toks[4], "sweep points");
                if points == Some(0) {
                    p.error(
                        toks[4].column,
                        DiagnosticKind::Semantic,
                        "sweep needs at least one point",
                    );
                    continue;
                }
                if let Some((_, first)) = &sweep {
                    let msg = format!("only one sweep is allowed (first on line {first})");
                    p.error(head.column, DiagnosticKind::Semantic, msg);
                    continue;
                }
                if let (true, Some(from), Some(to), Some(points)) =
                    (is_ident(name.text), from, to, points)
                {
                    sweep = Some((
                        Sweep {
                            name: name.text.to_string(),
                            from,
                            to,
                            points,
                        },
                        p.line,
                    ));
                }
            }
            "observe" => {
                if !p.arity(&toks, 1, 3, "observe pop INT | coh INT INT | waveplate") {
                    continue;
                }
                let what = toks[1];
                let obs = match what.text {
                    "pop" => {
                        if !p.arity(&toks, 2, 2, "observe pop INT") {
                            continue;
                        }
                        p.level(toks[2], n).map(Observable::Pop)
                    }
                    "coh" => {
                        if !p.arity(&toks, 3, 3, "observe coh INT INT") {
                            continue;
                        }
                        let i = p.level(toks[2], n);
                        let j = p.level(toks[3], n);
                        match (i, j) {
                            (Some(i), Some(j)) => Some(Observable::Coh(i, j)),
                            _ => None,
                        }
                    }
                    "waveplate" => {
                        if !p.arity(&toks, 1, 1, "observe waveplate") {
                            continue;
                        }
                        if n != 15 {
                            p.error(
                                what.column,
                                DiagnosticKind::Semantic,
                                format!("waveplate observables need 15 levels, model has {n}"),
                            );
                            None
                        } else {
                            Some(Observable::Waveplate)
                        }
                    }
                    other => {
                        p.error(
                            what.column,
                            DiagnosticKind::Syntax,
                            format!("unknown observable `{other}` (expected pop, coh or waveplate)"),
                        );
                        None
                    }
                };
                if let Some(obs) = obs {
                    if observables.contains(&obs) {
                        p.error(what.column, DiagnosticKind::Semantic, "duplicate observable");
                    } else {
                        observables.push(obs);
                    }
                }
            }
            _ => unreachable!(),
        }
    }

    let n = match levels {
        Some(n) => n,
        None => {
            if !missing_levels_reported {
                p.line = 1;
                p.error(1, DiagnosticKind::Syntax, "missing levels declaration");
            }
            return Err(ParseErrors(p.diags));
        }
    };

    // conjugate partners given explicitly must agree
    for (&(i, j), e) in &ham {
        if i >= j {
            continue;
        }
        if let Some(t) = ham.get(&(j, i)) {
            let diff = (t.value.c0 - e.value.c0.conj()).norm() + (t.value.c1 - e.value.c1.conj()).norm();
            if diff > 1e-12 {
                let later = if t.line >= e.line { t } else { e };
                p.diags.push(Diagnostic {
                    line: later.line,
                    column: later.column,
                    kind: DiagnosticKind::Semantic,
                    message: format!("ham {j} {i} is not the complex conjugate of ham {i} {j}"),
                });
            }
        }
    }
    for (&(i, j), e) in &deph {
        if i >= j {
            continue;
        }
        if let Some(t) = deph.get(&(j, i)) {
            if t.value != e.value {
                let later = if t.line >= e.line { t } else { e };
                p.diags.push(Diagnostic {
                    line: later.line,
                    column: later.column,
                    kind: DiagnosticKind::Semantic,
                    message: format!("deph {j} {i} differs from deph {i} {j}"),
                });
            }
        }
    }

    if !p.diags.is_empty() {
        p.diags.sort_by_key(|d| (d.line, d.column));
        return Err(ParseErrors(p.diags));
    }

    let mut model = ModelFile::new(n);
    model.ham = ham
        .into_iter()
        .filter(|(_, e)| !e.value.is_zero())
        .map(|(k, e)| (k, e.value))
        .collect();
    model.src = src
        .into_iter()
        .filter(|(_, e)| !e.value.is_zero())
        .map(|(k, e)| (k, e.value))
        .collect();
    model.deph = deph
        .into_iter()
        .filter(|(_, e)| !e.value.is_zero())
        .map(|(k, e)| (k, e.value))
        .collect();
    model.sweep = sweep.map(|(s, _)| s);
    model.observables = observables;
    Ok(model)
}
