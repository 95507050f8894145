use super::{ArcLabel, DiagramError, LinkDiagram};

/// Parses `X(a,b,c,d) X(...)` text or a JSON array `[[a,b,c,d],...]`.
pub fn parse_pd(text: &str) -> Result<LinkDiagram, DiagramError> {
    let raw = if text.trim_start().starts_with('[') {
        serde_json::from_str::<Vec<[ArcLabel; 4]>>(text)
            .map_err(|e| DiagramError::Syntax(format!("invalid JSON PD array: {e}")))?
    } else {
        parse_tokens(text)?
    };
    LinkDiagram::from_crossings(&raw)
}

fn parse_tokens(text: &str) -> Result<Vec<[ArcLabel; 4]>, DiagramError> {
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    let skip_sep = |i: &mut usize| {
        while *i < bytes.len() && (bytes[*i].is_ascii_whitespace() || bytes[*i] == b',') {
            *i += 1;
        }
    };
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    loop {
        skip_sep(&mut i);
        if i == bytes.len() {
            break;
        }
        let start = i;
        let err =
            |msg: &str| DiagramError::Syntax(format!("{msg} in token starting at byte {start}"));
        if !matches!(bytes[i], b'X' | b'x') {
            return Err(err("expected 'X'"));
        }
        i += 1;
        skip_ws(&mut i);
        if i == bytes.len() || bytes[i] != b'(' {
            return Err(err("expected '('"));
        }
        i += 1;
        let close = text[i..]
            .find(')')
            .map(|k| i + k)
            .ok_or_else(|| err("missing ')'"))?;
        let labels = text[i..close]
            .split(',')
            .map(|s| s.trim().parse::<ArcLabel>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| err("arc labels must be positive integers"))?;
        let labels: [ArcLabel; 4] = labels.try_into().map_err(|v: Vec<ArcLabel>| {
            err(&format!("expected 4 arc labels, found {}", v.len()))
        })?;
        out.push(labels);
        i = close + 1;
    }
    Ok(out)
}
