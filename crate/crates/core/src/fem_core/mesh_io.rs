//! Plain-text mesh format.
//!
//! ```text
//! # comment
//! PROPERTIES
//! kind tri6          # bar2 | tri6 (inferred from element arity if absent)
//! section 1.0        # bar area or plate thickness
//! NODES
//! 0 0.0 0.0          # id x [y]; ids are 0-based and consecutive
//! ELEMENTS
//! 0 0 1              # id n1 n2   or   id n1 .. n6
//! DIRICHLET
//! 0 0.0              # global dof, prescribed value
//! LOADS
//! 1 50.0             # global dof, nodal force
//! ```
//!
//! Global dof of component `c` at node `n` is `n * dofs_per_node + c`.

use std::fmt::Write as _;
use std::path::Path;

use super::{ElementKind, Mesh};
use crate::scalar::Real;
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq)]
enum Section {
    None,
    Properties,
    Nodes,
    Elements,
    Dirichlet,
    Loads,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn num<T: Real>(tok: &str, line: usize) -> Result<T> {
    tok.parse::<T>()
        .map_err(|_| perr(line, format!("not a number: {tok:?}")))
}

fn idx(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| perr(line, format!("not an index: {tok:?}")))
}

pub fn parse_mesh<T: Real>(text: &str) -> Result<Mesh<T>> {
    let mut section = Section::None;
    let mut kind: Option<ElementKind> = None;
    let mut thickness = T::one();
    let mut nodes = Vec::new();
    let mut elements = Vec::new();
    let mut dirichlet = Vec::new();
    let mut loads: Vec<(usize, T, usize)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        let header = match toks[0] {
            "PROPERTIES" => Some(Section::Properties),
            "NODES" => Some(Section::Nodes),
            "ELEMENTS" => Some(Section::Elements),
            "DIRICHLET" => Some(Section::Dirichlet),
            "LOADS" => Some(Section::Loads),
            _ => None,
        };
        if let Some(h) = header {
            section = h;
            continue;
        }
        match section {
            Section::None => return Err(perr(line, "data before any section header")),
            Section::Properties => match (toks[0], toks.get(1)) {
                ("kind", Some(&"bar2")) => kind = Some(ElementKind::Bar2),
                ("kind", Some(&"tri6")) => kind = Some(ElementKind::Tri6),
                ("section", Some(v)) | ("thickness", Some(v)) | ("area", Some(v)) => {
                    thickness = num(v, line)?
                }
                _ => return Err(perr(line, format!("unknown property line {content:?}"))),
            },
            Section::Nodes => {
                if toks.len() < 2 || toks.len() > 3 {
                    return Err(perr(line, "node line needs: id x [y]"));
                }
                let id = idx(toks[0], line)?;
                if id != nodes.len() {
                    return Err(perr(line, format!("node id {id} out of sequence")));
                }
                let y = match toks.get(2) {
                    Some(t) => num(t, line)?,
                    None => T::zero(),
                };
                nodes.push([num(toks[1], line)?, y]);
            }
            Section::Elements => {
                let conn = toks[1..]
                    .iter()
                    .map(|t| idx(t, line))
                    .collect::<Result<Vec<_>>>()?;
                let inferred = match conn.len() {
                    2 => ElementKind::Bar2,
                    6 => ElementKind::Tri6,
                    n => return Err(perr(line, format!("element with {n} nodes"))),
                };
                match kind {
                    Some(k) if k != inferred => {
                        return Err(perr(line, format!("element arity does not match kind {}", k.name())))
                    }
                    _ => kind = Some(inferred),
                }
                elements.push(conn);
            }
            Section::Dirichlet | Section::Loads => {
                if toks.len() != 2 {
                    return Err(perr(line, "expected: dof value"));
                }
                let dof = idx(toks[0], line)?;
                let v = num(toks[1], line)?;
                if section == Section::Dirichlet {
                    dirichlet.push((dof, v));
                } else {
                    loads.push((dof, v, line));
                }
            }
        }
    }

    let kind = kind.ok_or_else(|| perr(0, "mesh has no elements and no kind"))?;
    let ndof = nodes.len() * kind.dofs_per_node();
    let mut f = vec![T::zero(); ndof];
    for (dof, v, line) in loads {
        if dof >= ndof {
            return Err(perr(line, format!("load dof {dof} out of range")));
        }
        f[dof] = f[dof] + v;
    }
    let mesh = Mesh {
        nodes,
        elements,
        kind,
        section: thickness,
        dirichlet,
        loads: f,
    };
    mesh.validate()?;
    Ok(mesh)
}

pub fn read_mesh<T: Real>(path: impl AsRef<Path>) -> Result<Mesh<T>> {
    parse_mesh(&std::fs::read_to_string(path)?)
}

pub fn write_mesh<T: Real>(mesh: &Mesh<T>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "PROPERTIES\nkind {}\nsection {:e}", mesh.kind.name(), mesh.section);
    s.push_str("NODES\n");
    for (i, p) in mesh.nodes.iter().enumerate() {
        let _ = writeln!(s, "{i} {:e} {:e}", p[0], p[1]);
    }
    s.push_str("ELEMENTS\n");
    for (i, conn) in mesh.elements.iter().enumerate() {
        let ids: Vec<String> = conn.iter().map(|n| n.to_string()).collect();
        let _ = writeln!(s, "{i} {}", ids.join(" "));
    }
    s.push_str("DIRICHLET\n");
    for (d, v) in &mesh.dirichlet {
        let _ = writeln!(s, "{d} {v:e}");
    }
    s.push_str("LOADS\n");
    for (d, v) in mesh.loads.iter().enumerate().filter(|(_, v)| **v != T::zero()) {
        let _ = writeln!(s, "{d} {v:e}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_bar_with_comments() {
        let text = "# two-element bar\nPROPERTIES\nsection 2.0\nNODES\n0 0\n1 50 # mid\n2 100\n\
                    ELEMENTS\n0 0 1\n1 1 2\nDIRICHLET\n0 0\nLOADS\n2 50\n";
        let m: Mesh<f64> = parse_mesh(text).unwrap();
        assert_eq!(m.kind, ElementKind::Bar2);
        assert_eq!(m.section, 2.0);
        assert_eq!(m.loads, vec![0.0, 0.0, 50.0]);
        assert_eq!(m.elements.len(), 2);
    }

    #[test]
    fn write_then_parse_round_trips() {
        let mut m = Mesh::<f64>::bar(4, 100.0, 1.0);
        m.loads[4] = 50.0;
        let back: Mesh<f64> = parse_mesh(&write_mesh(&m)).unwrap();
        assert_eq!(back.nodes, m.nodes);
        assert_eq!(back.elements, m.elements);
        assert_eq!(back.loads, m.loads);
        assert_eq!(back.dirichlet, m.dirichlet);
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_mesh::<f64>("NODES\n0 0 0\n1 x 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse_mesh::<f64>("0 0 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = parse_mesh::<f64>("NODES\n0 0\n1 1\nELEMENTS\n0 0 5\n").unwrap_err();
        assert!(matches!(err, Error::BadMesh(_)));
    }
}
