use super::{Graph, GraphError, MAX_VERTICES};

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    let mut g = Graph::empty(n)?;
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

/// Cycle `0-1-...-(n-1)-0`; needs `n >= 3`.
pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::GeneratorSize(n));
    }
    let mut g = path(n)?;
    g.add_edge(n - 1, 0)?;
    Ok(g)
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    let mut g = Graph::empty(n)?;
    for u in 1..n {
        g.add_edge(u - 1, u)?;
    }
    Ok(g)
}

/// `K_{1,leaves}` with the hub at vertex 0.
pub fn star(leaves: usize) -> Result<Graph, GraphError> {
    let mut g = Graph::empty(leaves + 1)?;
    for v in 1..=leaves {
        g.add_edge(0, v)?;
    }
    Ok(g)
}

/// Wheel on `n` vertices: hub 0 joined to a cycle on `1..n`.
pub fn wheel(n: usize) -> Result<Graph, GraphError> {
    if n < 4 {
        return Err(GraphError::GeneratorSize(n));
    }
    let mut g = Graph::empty(n)?;
    for v in 1..n {
        g.add_edge(0, v)?;
        g.add_edge(v, if v + 1 == n { 1 } else { v + 1 })?;
    }
    Ok(g)
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i ~ i+5`.
pub fn petersen() -> Graph {
    let mut g = Graph::empty(10).expect("10 vertices");
    for i in 0..5 {
        g.add_edge(i, (i + 1) % 5).expect("valid");
        g.add_edge(5 + i, 5 + (i + 2) % 5).expect("valid");
        g.add_edge(i, i + 5).expect("valid");
    }
    g
}

/// The `n x n` rooks graph `K_n □ K_n`, square `(row, col)` at `row * n + col`.
pub fn rooks(n: usize) -> Result<Graph, GraphError> {
    if n == 0 || n * n > MAX_VERTICES {
        return Err(GraphError::GeneratorSize(n));
    }
    let k = complete(n)?;
    k.cartesian_product(&k)
}
