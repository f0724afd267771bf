//! Text input format.
//!
//! ```text
//! algebra A
//! vertices: 1 2
//! arrows: a1:1->2; a2:1->2; b:2->1
//! relations: b*a1, b*a2        # application order: b first, or (none)
//! subalgebra B
//! arrows: a1, a2
//! ```
//!
//! Statements end at a newline or `;`. The `algebra` header is optional.

use crate::algebra::{MonomialAlgebra, SubalgebraPair};
use crate::error::{Error, Result};
use crate::quiver::{Arrow, Path, Quiver, VertexId};

#[derive(Clone, Debug)]
pub enum Input {
    Algebra(MonomialAlgebra),
    Pair(SubalgebraPair),
}

impl Input {
    pub fn algebra(&self) -> &MonomialAlgebra {
        match self {
            Input::Algebra(a) => a,
            Input::Pair(p) => p.ambient(),
        }
    }

    pub fn into_algebra(self) -> MonomialAlgebra {
        match self {
            Input::Algebra(a) => a,
            Input::Pair(p) => p.ambient().clone(),
        }
    }

    /// The pair; a bare algebra is paired with its vertex span.
    pub fn into_pair(self) -> Result<SubalgebraPair> {
        match self {
            Input::Pair(p) => Ok(p),
            Input::Algebra(a) => SubalgebraPair::from_arrow_indices(a, "E", &[]),
        }
    }

    pub fn has_subalgebra(&self) -> bool {
        matches!(self, Input::Pair(_))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Section {
    Start,
    Header,
    Vertices,
    Arrows,
    Relations,
    SubHeader,
    SubArrows,
}

struct Segment<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn segments(text: &str) -> Vec<Segment<'_>> {
    let mut out = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let mut start = 0;
        for piece in line.split(';') {
            let lead = piece.len() - piece.trim_start().len();
            let trimmed = piece.trim();
            if !trimmed.is_empty() {
                let column = line[..start + lead].chars().count() + 1;
                out.push(Segment {
                    text: trimmed,
                    line: ln + 1,
                    column,
                });
            }
            start += piece.len() + 1;
        }
    }
    out
}

fn strip_keyword<'a>(s: &'a str, kw: &str) -> Option<&'a str> {
    let rest = s.strip_prefix(kw)?;
    if kw.ends_with(':') || rest.is_empty() || rest.starts_with(char::is_whitespace) {
        Some(rest.trim())
    } else {
        None
    }
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && !s.contains(|c: char| c.is_whitespace() || ":;,#".contains(c))
}

pub fn parse_input(text: &str) -> Result<Input> {
    let mut section = Section::Start;
    let mut name = String::from("A");
    let mut sub_name: Option<String> = None;
    let mut vertices: Vec<VertexId> = Vec::new();
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut rel_texts: Vec<(String, usize, usize)> = Vec::new();
    let mut sub_arrow_names: Vec<String> = Vec::new();
    let mut seen_relations = false;
    let mut seen_sub_arrows = false;

    for seg in segments(text) {
        let (l, c) = (seg.line, seg.column);
        let s = seg.text;
        if let Some(rest) = strip_keyword(s, "subalgebra") {
            if !matches!(section, Section::Relations) {
                return Err(err(l, c, "subalgebra block must follow the relations line"));
            }
            sub_name = Some(if rest.is_empty() { "B".into() } else { rest.to_string() });
            section = Section::SubHeader;
            continue;
        }
        if let Some(rest) = strip_keyword(s, "algebra") {
            if section != Section::Start {
                return Err(err(l, c, "unexpected algebra header"));
            }
            if !rest.is_empty() {
                name = rest.to_string();
            }
            section = Section::Header;
            continue;
        }
        if let Some(rest) = strip_keyword(s, "vertices:") {
            if !matches!(section, Section::Start | Section::Header) {
                return Err(err(l, c, "unexpected vertices line"));
            }
            for tok in rest.split([',', ' ', '\t']).filter(|t| !t.is_empty()) {
                let v: VertexId = tok
                    .parse()
                    .map_err(|_| err(l, c, format!("bad vertex id '{tok}'")))?;
                vertices.push(v);
            }
            section = Section::Vertices;
            continue;
        }
        if let Some(rest) = strip_keyword(s, "arrows:") {
            match section {
                Section::Vertices => {
                    section = Section::Arrows;
                    if !rest.is_empty() {
                        arrows.push(parse_arrow(rest, l, c)?);
                    }
                }
                Section::SubHeader => {
                    section = Section::SubArrows;
                    seen_sub_arrows = true;
                    push_names(rest, &mut sub_arrow_names, l, c)?;
                }
                _ => return Err(err(l, c, "unexpected arrows line")),
            }
            continue;
        }
        if let Some(rest) = strip_keyword(s, "relations:") {
            if section != Section::Arrows {
                return Err(err(l, c, "relations line must follow the arrows"));
            }
            section = Section::Relations;
            seen_relations = true;
            push_relations(rest, &mut rel_texts, l, c)?;
            continue;
        }
        match section {
            Section::Arrows => arrows.push(parse_arrow(s, l, c)?),
            Section::Relations => push_relations(s, &mut rel_texts, l, c)?,
            Section::SubArrows => push_names(s, &mut sub_arrow_names, l, c)?,
            _ => return Err(err(l, c, format!("unexpected text '{s}'"))),
        }
    }
    if !seen_relations {
        return Err(err(1, 1, "missing vertices, arrows or relations line"));
    }
    if sub_name.is_some() && !seen_sub_arrows {
        return Err(err(1, 1, "subalgebra block needs an arrows line"));
    }

    let quiver = Quiver::new(vertices, arrows)?;
    let mut relations = Vec::new();
    for (t, l, c) in &rel_texts {
        let idx = parse_path(&quiver, t).map_err(|m| err(*l, *c, m))?;
        relations.push(Path::from_arrows(&quiver, idx)?);
    }
    let algebra = MonomialAlgebra::new(name, quiver, relations)?;
    match sub_name {
        None => Ok(Input::Algebra(algebra)),
        Some(n) => Ok(Input::Pair(SubalgebraPair::from_arrow_names(
            algebra,
            n,
            &sub_arrow_names,
        )?)),
    }
}

fn parse_arrow(s: &str, l: usize, c: usize) -> Result<Arrow> {
    let (name, ends) = s
        .split_once(':')
        .ok_or_else(|| err(l, c, format!("arrow declaration '{s}' needs name:source->target")))?;
    let name = name.trim();
    if !valid_name(name) {
        return Err(err(l, c, format!("bad arrow name '{name}'")));
    }
    let (src, tgt) = ends
        .split_once("->")
        .ok_or_else(|| err(l, c, format!("arrow {name} needs source->target")))?;
    let parse_v = |t: &str| -> Result<VertexId> {
        t.trim()
            .parse()
            .map_err(|_| err(l, c, format!("bad vertex id '{}' in arrow {name}", t.trim())))
    };
    Ok(Arrow::new(name, parse_v(src)?, parse_v(tgt)?))
}

fn push_relations(s: &str, out: &mut Vec<(String, usize, usize)>, l: usize, c: usize) -> Result<()> {
    let s = s.trim();
    if s == "(none)" {
        return Ok(());
    }
    for p in s.split(',') {
        let p: String = p.split_whitespace().collect();
        if p.is_empty() {
            return Err(err(l, c, "empty relation"));
        }
        out.push((p, l, c));
    }
    Ok(())
}

fn push_names(s: &str, out: &mut Vec<String>, l: usize, c: usize) -> Result<()> {
    let s = s.trim();
    if s == "(none)" || s.is_empty() {
        return Ok(());
    }
    for n in s.split([',', ' ', '\t']).filter(|t| !t.is_empty()) {
        if !valid_name(n) {
            return Err(err(l, c, format!("bad arrow name '{n}'")));
        }
        out.push(n.to_string());
    }
    Ok(())
}

/// Split `a*b*c` into arrow indices. Names may themselves end in `*`, so every
/// segmentation into known names is tried and exactly one must exist.
pub fn parse_path(q: &Quiver, text: &str) -> std::result::Result<Vec<usize>, String> {
    let n = text.len();
    // ways[i]: number of segmentations of text[i..] (capped at 2), choice[i]: first arrow
    let mut ways = vec![0u8; n + 1];
    let mut choice = vec![usize::MAX; n + 1];
    ways[n] = 1;
    for i in (0..n).rev() {
        if !text.is_char_boundary(i) {
            continue;
        }
        for (ai, a) in q.arrows().iter().enumerate() {
            if !text[i..].starts_with(a.name.as_str()) {
                continue;
            }
            let j = i + a.name.len();
            let next = if j == n {
                Some(n)
            } else if text[j..].starts_with('*') && j + 1 < n {
                Some(j + 1)
            } else {
                None
            };
            if let Some(k) = next {
                if ways[k] > 0 {
                    ways[i] = (ways[i] + ways[k]).min(2);
                    choice[i] = ai;
                }
            }
        }
    }
    match ways[0] {
        0 => Err(format!("'{text}' is not a sequence of known arrow names joined by '*'")),
        1 => {
            let mut out = Vec::new();
            let mut i = 0;
            while i < n {
                let a = choice[i];
                out.push(a);
                i += q.arrow(a).name.len();
                if i < n {
                    i += 1;
                }
            }
            Ok(out)
        }
        _ => Err(format!("'{text}' splits into arrow names in more than one way")),
    }
}

/// Text form of an algebra, readable by [`parse_input`].
pub fn write_algebra(a: &MonomialAlgebra) -> String {
    let q = a.quiver();
    let verts: Vec<String> = q.vertices().iter().map(|v| v.to_string()).collect();
    let arrows: Vec<String> = q
        .arrows()
        .iter()
        .map(|x| format!("{}:{}->{}", x.name, x.source, x.target))
        .collect();
    let rels: Vec<String> = a.relations().iter().map(|r| r.label(q)).collect();
    format!(
        "algebra {}\nvertices: {}\narrows: {}\nrelations: {}\n",
        a.name(),
        verts.join(" "),
        if arrows.is_empty() { String::new() } else { arrows.join("; ") },
        if rels.is_empty() { "(none)".to_string() } else { rels.join(", ") }
    )
}

pub fn write_pair(pair: &SubalgebraPair) -> String {
    let names = pair.ambient().quiver().arrow_names(pair.sub_arrows());
    format!(
        "{}subalgebra {}\narrows: {}\n",
        write_algebra(pair.ambient()),
        pair.sub().name(),
        if names.is_empty() { "(none)".to_string() } else { names.join(", ") }
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_line_form() {
        let inp = parse_input("vertices: 1 2; arrows: a:1->2; relations: (none)").unwrap();
        let a = inp.algebra();
        assert_eq!(a.dim(), 3);
    }

    #[test]
    fn notsolv_basis() {
        let text = "algebra notsolv\nvertices: 1 2\narrows: α1:1->2; α2:1->2; β:2->1\nrelations: β*α1, β*α2\n";
        let a = parse_input(text).unwrap().into_algebra();
        let labels: Vec<String> = a.basis().iter().map(|p| a.path_label(p)).collect();
        assert_eq!(labels, ["e1", "e2", "α1", "α2", "β", "α1*β", "α2*β"]);
    }

    #[test]
    fn rejects_short_relation_and_bad_syntax() {
        let e = parse_input("vertices: 1 2\narrows: a:1->2\nrelations: a").unwrap_err();
        assert!(matches!(e, Error::Validation(_)));
        let e = parse_input("vertices: 1 2\narrows: a:1=>2\nrelations: (none)").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse_input("vertices: 1 2\narrows: a:1->2; a:2->1\nrelations: (none)").unwrap_err();
        assert!(matches!(e, Error::Validation(_)));
        let e = parse_input("vertices: 1\narrows: a:1->2\nrelations: (none)").unwrap_err();
        assert!(matches!(e, Error::Validation(_)));
    }

    #[test]
    fn starred_names() {
        let text = "vertices: 1 2\narrows: a:1->2; a*:2->1\nrelations: a**a\n";
        let a = parse_input(text).unwrap().into_algebra();
        let r = &a.relations()[0];
        assert_eq!(r.names(a.quiver()), ["a*", "a"]);
    }

    #[test]
    fn subalgebra_block() {
        let text = "vertices: 1 2\narrows: a:1->2; b:1->2\nrelations: (none)\nsubalgebra K\narrows: b\n";
        let Input::Pair(p) = parse_input(text).unwrap() else { panic!() };
        assert_eq!(p.sub_arrows(), &[1]);
        assert_eq!(p.complement_arrows(), vec![0]);
        assert!(parse_input("vertices: 1 2\narrows: a:1->2\nrelations: (none)\nsubalgebra K\narrows: c\n").is_err());
    }
}
