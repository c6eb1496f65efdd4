//! Text formats: PACE-style `.gr` / `.td`, solution lists and family files.
//! Every id on disk is 1-based.

use crate::decomp::TreeDecomposition;
use crate::error::{input, Error, Result};
use crate::family::Family;
use crate::graph::Graph;
use serde::Deserialize;
use std::fmt::Write;

fn num(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| Error::Input(format!("line {line}: expected an integer, got {tok:?}")))
}

fn vertex(tok: &str, n: usize, line: usize) -> Result<usize> {
    let v = num(tok, line)?;
    if v == 0 || v > n {
        return input(format!("line {line}: vertex {v} outside 1..={n}"));
    }
    Ok(v - 1)
}

/// Parses `.gr`. Comment lines of the form `c v <id> <name>` restore names.
pub fn parse_gr(text: &str) -> Result<Graph> {
    let mut g: Option<Graph> = None;
    let mut m_decl = 0;
    let mut names = Vec::new();
    let mut edges = 0;
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        match toks.first() {
            None => continue,
            Some(&"c") => {
                if toks.len() >= 4 && toks[1] == "v" {
                    names.push((num(toks[2], ln)?, toks[3..].join(" ")));
                }
            }
            Some(&"p") => {
                if g.is_some() {
                    return input(format!("line {ln}: second header"));
                }
                if toks.len() != 4 || toks[1] != "tw" {
                    return input(format!("line {ln}: header must be `p tw <n> <m>`"));
                }
                g = Some(Graph::new(num(toks[2], ln)?));
                m_decl = num(toks[3], ln)?;
            }
            _ => {
                let Some(g) = g.as_mut() else {
                    return input(format!("line {ln}: edge before header"));
                };
                if toks.len() != 2 {
                    return input(format!("line {ln}: edge lines hold two ids"));
                }
                let (u, v) = (vertex(toks[0], g.n(), ln)?, vertex(toks[1], g.n(), ln)?);
                if u == v {
                    return input(format!("line {ln}: self-loop"));
                }
                if g.has_edge(u, v) {
                    return input(format!("line {ln}: repeated edge"));
                }
                g.add_edge(u, v);
                edges += 1;
            }
        }
    }
    let Some(mut g) = g else {
        return input("missing `p tw` header");
    };
    if edges != m_decl {
        return input(format!("header declares {m_decl} edges, found {edges}"));
    }
    for (v, name) in names {
        if v == 0 || v > g.n() {
            return input(format!("name for unknown vertex {v}"));
        }
        g.set_name(v - 1, name);
    }
    Ok(g)
}

pub fn emit_gr(g: &Graph) -> String {
    let mut s = String::new();
    if let Some(names) = g.names() {
        for (v, name) in names.iter().enumerate() {
            if !name.is_empty() {
                writeln!(s, "c v {} {name}", v + 1).unwrap();
            }
        }
    }
    writeln!(s, "p tw {} {}", g.n(), g.m()).unwrap();
    for (u, v) in g.edges() {
        writeln!(s, "{} {}", u + 1, v + 1).unwrap();
    }
    s
}

/// Parses `.td`; `n` must match the header.
pub fn parse_td(text: &str, n: usize) -> Result<TreeDecomposition> {
    let mut header: Option<(usize, usize)> = None;
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        match toks.first() {
            None | Some(&"c") => continue,
            Some(&"s") => {
                if toks.len() != 5 || toks[1] != "td" {
                    return input(format!("line {ln}: header must be `s td <bags> <maxbag> <n>`"));
                }
                let nb = num(toks[2], ln)?;
                if num(toks[4], ln)? != n {
                    return input(format!("line {ln}: decomposition is for {} vertices, graph has {n}", toks[4]));
                }
                header = Some((nb, num(toks[3], ln)?));
                bags = vec![None; nb];
            }
            Some(&"b") => {
                let Some((nb, _)) = header else {
                    return input(format!("line {ln}: bag before header"));
                };
                if toks.len() < 2 {
                    return input(format!("line {ln}: bag line needs an id"));
                }
                let id = vertex(toks[1], nb, ln)?;
                if bags[id].is_some() {
                    return input(format!("line {ln}: bag {} repeated", id + 1));
                }
                let vs = toks[2..].iter().map(|t| vertex(t, n, ln)).collect::<Result<Vec<_>>>()?;
                bags[id] = Some(vs);
            }
            _ => {
                let Some((nb, _)) = header else {
                    return input(format!("line {ln}: edge before header"));
                };
                if toks.len() != 2 {
                    return input(format!("line {ln}: tree edge lines hold two ids"));
                }
                edges.push((vertex(toks[0], nb, ln)?, vertex(toks[1], nb, ln)?));
            }
        }
    }
    let Some((_, maxbag)) = header else {
        return input("missing `s td` header");
    };
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| Error::Input(format!("bag {} missing", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    let td = TreeDecomposition::new(bags, edges);
    if (td.width() + 1) as usize != maxbag && !td.bags.is_empty() {
        return input(format!("header max bag {maxbag} differs from actual {}", td.width() + 1));
    }
    Ok(td)
}

pub fn emit_td(td: &TreeDecomposition, n: usize) -> String {
    let mut s = String::new();
    writeln!(s, "s td {} {} {n}", td.bags.len(), (td.width() + 1).max(0)).unwrap();
    for (i, b) in td.bags.iter().enumerate() {
        write!(s, "b {}", i + 1).unwrap();
        for v in b {
            write!(s, " {}", v + 1).unwrap();
        }
        s.push('\n');
    }
    for &(a, b) in &td.edges {
        writeln!(s, "{} {}", a + 1, b + 1).unwrap();
    }
    s
}

/// Reads a solution: whitespace or comma separated 1-based ids, or a JSON
/// object with a `solution` or `sigma_solution` array. Returns 0-based ids.
pub fn parse_solution(text: &str, n: usize) -> Result<Vec<usize>> {
    let t = text.trim();
    let ids: Vec<usize> = if t.starts_with('{') {
        let v: serde_json::Value = serde_json::from_str(t).map_err(|e| Error::Input(format!("solution JSON: {e}")))?;
        let arr = v.get("solution").or_else(|| v.get("sigma_solution")).and_then(|a| a.as_array());
        let Some(arr) = arr else {
            return input("solution JSON needs a `solution` or `sigma_solution` array");
        };
        arr.iter()
            .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(|| Error::Input("solution ids must be integers".into())))
            .collect::<Result<_>>()?
    } else {
        t.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).map(|s| num(s, 1)).collect::<Result<_>>()?
    };
    let mut out = Vec::with_capacity(ids.len());
    for v in ids {
        if v == 0 || v > n {
            return input(format!("solution vertex {v} outside 1..={n}"));
        }
        out.push(v - 1);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MemberSpec {
    Name(String),
    Explicit { n: usize, edges: Vec<(usize, usize)> },
}

#[derive(Deserialize)]
struct FamilySpec {
    #[serde(default)]
    name: Option<String>,
    members: Vec<MemberSpec>,
}

/// Family file: `{"name": "...", "members": ["k4", {"n": 3, "edges": [[1,2],[2,3]]}]}`.
pub fn parse_family(text: &str) -> Result<Family> {
    let file: FamilySpec = serde_json::from_str(text).map_err(|e| Error::Input(format!("family JSON: {e}")))?;
    let mut members = Vec::new();
    let mut names = Vec::new();
    for m in file.members {
        match m {
            MemberSpec::Name(s) => {
                members.push(Family::graph_by_name(&s)?);
                names.push(s.to_ascii_uppercase());
            }
            MemberSpec::Explicit { n, edges } => {
                let mut zero = Vec::with_capacity(edges.len());
                for (u, v) in edges {
                    if u == 0 || v == 0 || u > n || v > n {
                        return input(format!("family edge ({u},{v}) outside 1..={n}"));
                    }
                    zero.push((u - 1, v - 1));
                }
                members.push(Graph::from_edges(n, &zero)?);
                names.push(format!("G{}", names.len() + 1));
            }
        }
    }
    let name = file.name.unwrap_or_else(|| names.join("+"));
    Family::new(name, members)
}
