//! Graph specifications on the command line.
//!
//! ```text
//! spec := petersen | rook N | cycle N | path N | complete N | star N | wheel N
//!       | cart SPEC SPEC | g6:TEXT | edges:PATH | TEXT
//! ```
//!
//! A bare `TEXT` is read as graph6. Edge-list files hold one `u v` pair per
//! line; `#` starts a comment and an optional `n N` line fixes the vertex
//! count (otherwise it is one more than the largest id).

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use lazycop_core::graph::{complete, cycle, parse_graph6, path, petersen, rooks, star, wheel};
use lazycop_core::Graph;

pub fn parse_spec(words: &[String]) -> Result<Graph> {
    let tokens: Vec<&str> = words.iter().flat_map(|w| w.split_whitespace()).collect();
    if tokens.is_empty() {
        bail!("empty graph spec");
    }
    let mut pos = 0;
    let g = parse_at(&tokens, &mut pos)?;
    if pos != tokens.len() {
        bail!("unexpected trailing input {:?} in graph spec", tokens[pos..].join(" "));
    }
    Ok(g)
}

fn number(tokens: &[&str], pos: &mut usize, family: &str) -> Result<usize> {
    let t = tokens
        .get(*pos)
        .ok_or_else(|| anyhow!("{family} needs a size"))?;
    *pos += 1;
    t.parse().with_context(|| format!("{family} size {t:?} is not a number"))
}

fn parse_at(tokens: &[&str], pos: &mut usize) -> Result<Graph> {
    let head = tokens[*pos];
    *pos += 1;
    let g = match head {
        "petersen" => petersen(),
        "rook" | "rooks" => rooks(number(tokens, pos, head)?)?,
        "cycle" => cycle(number(tokens, pos, head)?)?,
        "path" => path(number(tokens, pos, head)?)?,
        "complete" => complete(number(tokens, pos, head)?)?,
        "star" => star(number(tokens, pos, head)?)?,
        "wheel" => wheel(number(tokens, pos, head)?)?,
        "cart" => {
            if *pos >= tokens.len() {
                bail!("cart needs two graph specs");
            }
            let a = parse_at(tokens, pos)?;
            if *pos >= tokens.len() {
                bail!("cart needs two graph specs");
            }
            let b = parse_at(tokens, pos)?;
            a.cartesian_product(&b)?
        }
        _ => {
            if let Some(text) = head.strip_prefix("g6:") {
                parse_graph6(text).with_context(|| format!("bad graph6 {text:?}"))?
            } else if let Some(file) = head.strip_prefix("edges:") {
                read_edge_list(Path::new(file))?
            } else {
                parse_graph6(head).map_err(|e| anyhow!("unknown graph spec {head:?} (not graph6 either: {e})"))?
            }
        }
    };
    Ok(g)
}

pub fn read_edge_list(file: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).collect();
        let parse = |s: &str| -> Result<usize> {
            s.parse().with_context(|| format!("{}:{}: {s:?} is not a vertex id", file.display(), i + 1))
        };
        match fields.as_slice() {
            ["n", count] => n = Some(parse(count)?),
            [u, v] => edges.push((parse(u)?, parse(v)?)),
            _ => bail!("{}:{}: expected `u v` or `n N`", file.display(), i + 1),
        }
    }
    let n = n.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(1));
    Ok(Graph::new(n, &edges)?)
}
