use super::{Quad, QuadSet};

/// One N-Quads line for `quad`, without the trailing newline.
pub fn quad_line(quad: &Quad) -> String {
    quad.to_string()
}

/// Deterministic N-Quads serialization: one `S P O G .` line per quad,
/// lines sorted by code point, each terminated by `\n`.
///
/// Byte order of UTF-8 strings coincides with code point order, so a plain
/// string sort is sufficient.
pub fn canonical_nquads(quads: &QuadSet) -> String {
    let mut lines: Vec<String> = quads.iter().map(quad_line).collect();
    lines.sort_unstable();
    let mut out = String::with_capacity(lines.iter().map(|l| l.len() + 1).sum());
    for line in lines {
        out.push_str(&line);
        out.push('\n');
    }
    out
}
