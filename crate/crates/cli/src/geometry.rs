//! Plot-ready geometry for the ontic cube, the two parity tetrahedra, the
//! stabilizer octahedron, and the arrow sets of the two coarse-grained
//! maps.

use serde::Serialize;

use stabctx_core::algebra::{Rational, Sign};
use stabctx_core::ontology::{channel_map, OnticState, StochasticMap};
use stabctx_core::operational::{extremal_states, make_t1, make_t2};

#[derive(Serialize)]
pub struct CubeGeometry {
    #[serde(rename = "toolVersion")]
    tool_version: String,
    cube_vertices: Vec<CubeVertex>,
    even_parity_tetrahedron: Vec<[Rational; 3]>,
    odd_parity_tetrahedron: Vec<[Rational; 3]>,
    octahedron_vertices: Vec<[Rational; 3]>,
    t1_arrows: Vec<Arrow>,
    t2_arrows: Vec<Arrow>,
}

#[derive(Serialize)]
struct CubeVertex {
    coords: [Rational; 3],
    parity: Sign,
}

#[derive(Serialize)]
struct Arrow {
    from: [Rational; 3],
    to: [Rational; 3],
}

fn vertex_coords(state: OnticState) -> [Rational; 3] {
    [
        state.x.as_rational(),
        state.y.as_rational(),
        state.z.as_rational(),
    ]
}

fn arrows_of(map: &StochasticMap) -> Vec<Arrow> {
    let mut arrows = Vec::new();
    for from in OnticState::all() {
        for to in OnticState::all() {
            if !map.entry(to, from).is_zero() {
                arrows.push(Arrow {
                    from: vertex_coords(from),
                    to: vertex_coords(to),
                });
            }
        }
    }
    arrows
}

/// Assembles the full figure payload in fixed lexicographic orders.
pub fn cube_geometry() -> CubeGeometry {
    let cube_vertices: Vec<CubeVertex> = OnticState::all()
        .into_iter()
        .map(|state| CubeVertex {
            coords: vertex_coords(state),
            parity: state.parity(),
        })
        .collect();
    let tetrahedron = |parity: Sign| -> Vec<[Rational; 3]> {
        OnticState::all()
            .into_iter()
            .filter(|state| state.parity() == parity)
            .map(vertex_coords)
            .collect()
    };
    CubeGeometry {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        cube_vertices,
        even_parity_tetrahedron: tetrahedron(Sign::Plus),
        odd_parity_tetrahedron: tetrahedron(Sign::Minus),
        octahedron_vertices: extremal_states().iter().map(|s| s.coords()).collect(),
        t1_arrows: arrows_of(&channel_map(&make_t1())),
        t2_arrows: arrows_of(&channel_map(&make_t2())),
    }
}
