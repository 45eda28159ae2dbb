//! Static scan of the algorithm sources for arithmetic that bypasses `Ops`.

#![allow(dead_code)]

use std::path::PathBuf;

use regex::Regex;

/// Drops the test module, comments, and string and char literals, keeping
/// line structure.
pub fn strip(source: &str) -> String {
    let code = match source.find("#[cfg(test)]") {
        Some(i) => &source[..i],
        None => source,
    };
    let mut out = String::with_capacity(code.len());
    let mut chars = code.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '/' if chars.peek() == Some(&'/') => {
                for c in chars.by_ref() {
                    if c == '\n' {
                        out.push('\n');
                        break;
                    }
                }
            }
            '"' => {
                let mut escaped = false;
                for c in chars.by_ref() {
                    if c == '\n' {
                        out.push('\n');
                    }
                    if escaped {
                        escaped = false;
                    } else if c == '\\' {
                        escaped = true;
                    } else if c == '"' {
                        break;
                    }
                }
                out.push_str("\"\"");
            }
            _ => out.push(c),
        }
    }
    out
}

const FORBIDDEN_TOKENS: &[&str] = &[
    " + ",
    " - ",
    " * ",
    " / ",
    " % ",
    "+=",
    "-=",
    "*=",
    "/=",
    "%=",
    "<<",
    ">>=",
    ".pow(",
    "checked_",
    "wrapping_",
    "saturating_",
    "overflowing_",
    ".sum(",
    ".product(",
    "i128",
    "u128",
    ".mul(",
    ".div(",
    ".rem(",
    "Mul",
    "Div",
];

/// Every arithmetic use found in `source`, as `(line, snippet)`.
pub fn violations(source: &str) -> Vec<(usize, String)> {
    let compact = Regex::new(r"[\w)\]][+*/%-][\w(]").unwrap();
    let mut found = Vec::new();
    for (i, line) in strip(source).lines().enumerate() {
        let hit = FORBIDDEN_TOKENS.iter().any(|t| line.contains(t)) || compact.is_match(line);
        if hit {
            found.push((i + 1, line.trim().to_owned()));
        }
    }
    found
}

pub fn algorithm_sources() -> Vec<(PathBuf, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("src/algorithms");
    let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "rs"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).unwrap();
            (p, text)
        })
        .collect()
}

/// All violations across `src/algorithms`, formatted `file:line: code`.
pub fn audit() -> Vec<String> {
    let mut out = Vec::new();
    for (path, text) in algorithm_sources() {
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        for (line, code) in violations(&text) {
            out.push(format!("{name}:{line}: {code}"));
        }
    }
    out
}
