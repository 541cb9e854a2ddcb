//! Acceptance suite. Prints one line per criterion and exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use grid_catalan::checks::{
    counting_chain, fan_battery, lattice_battery, shard_battery, shelling_check, tableaux_battery,
    triangle_battery,
};
use grid_catalan::complexes::{h_from_f, NonkissingComplex};
use grid_catalan::gallery::{cell_subshapes, polyominoes, rectangles, small_interior_shapes};
use grid_catalan::triangles::{f_triangle, h_triangle, m_triangle, verify_fh, verify_fm, Triangle};
use grid_catalan::wide::WideLattice;
use grid_catalan::{Catalog, Shape};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn rect(k: u32, m: u32) -> Shape {
    Shape::rect(k, m).expect("rectangle")
}

fn on_all(shapes: &[Shape], check: impl Fn(&Shape) -> Result<(), String>) -> Result<(), String> {
    for shape in shapes {
        check(shape).map_err(|e| format!("{}: {e}", shape.to_json()))?;
    }
    Ok(())
}

/// Nonzero terms `(x-degree, y-degree, coefficient)`, sorted.
fn terms(t: &Triangle) -> Vec<(usize, usize, i128)> {
    let x_is_offset = t.convention == "x^(i-j) y^j";
    let mut out = Vec::new();
    for (i, row) in t.coeffs.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            if c != 0 {
                out.push((if x_is_offset { i - j } else { i }, j, c));
            }
        }
    }
    out.sort();
    out
}

fn sorted(mut v: Vec<(usize, usize, i128)>) -> Vec<(usize, usize, i128)> {
    v.sort();
    v
}

fn golden_rect23() -> Outcome {
    let cat = Catalog::new(&rect(2, 3));
    let nk = NonkissingComplex::new(&cat).map_err(|e| e.to_string())?;
    let f = f_triangle(&cat, &nk);
    let h = h_triangle(&cat);
    let m = m_triangle(&WideLattice::new(&cat).map_err(|e| e.to_string())?);
    let want_f = sorted(vec![(0, 0, 1), (1, 0, 3), (0, 1, 2), (2, 0, 2), (1, 1, 2), (0, 2, 1)]);
    let want_h = sorted(vec![(0, 0, 1), (1, 0, 1), (1, 1, 2), (2, 2, 1)]);
    let want_m = sorted(vec![(0, 0, 1), (1, 1, 3), (2, 2, 1), (1, 0, -3), (2, 1, -3), (2, 0, 2)]);
    ensure!(terms(&f) == want_f, "F = {:?}", terms(&f));
    ensure!(terms(&h) == want_h, "H = {:?}", terms(&h));
    ensure!(terms(&m) == want_m, "M = {:?}", terms(&m));
    ensure!(nk.f_vector() == vec![1, 5, 5], "f = {:?}", nk.f_vector());
    let hv = h_from_f(&nk.f_vector(), cat.rank());
    ensure!(hv == vec![1, 3, 1], "h = {hv:?}");
    Ok("F, H, M, f(t), h(t) match".into())
}

fn lower(rows: &[&[i128]]) -> Vec<Vec<i128>> {
    rows.iter()
        .map(|row| {
            let mut v = row.to_vec();
            v.resize(rows.len(), 0);
            v
        })
        .collect()
}

fn golden_rect34() -> Outcome {
    let cat = Catalog::new(&rect(3, 4));
    let nk = NonkissingComplex::new(&cat).map_err(|e| e.to_string())?;
    let f = f_triangle(&cat, &nk);
    let h = h_triangle(&cat);
    let m = m_triangle(&WideLattice::new(&cat).map_err(|e| e.to_string())?);
    let want_f = lower(&[
        &[1],
        &[22, 6],
        &[141, 82, 15],
        &[395, 344, 123, 20],
        &[548, 620, 319, 94, 15],
        &[371, 506, 332, 134, 37, 6],
        &[98, 154, 121, 60, 22, 6, 1],
    ]);
    let want_h = lower(&[
        &[1],
        &[16, 6],
        &[46, 52, 15],
        &[31, 76, 63, 20],
        &[4, 20, 40, 34, 15],
        &[0, 0, 3, 6, 7, 6],
        &[0, 0, 0, 0, 0, 0, 1],
    ]);
    let want_m = lower(&[
        &[1],
        &[-22, 22],
        &[141, -254, 113],
        &[-395, 965, -760, 190],
        &[548, -1627, 1726, -760, 113],
        &[-371, 1265, -1627, 965, -254, 22],
        &[98, -371, 548, -395, 141, -22, 1],
    ]);
    for (name, got, want) in [("f", &f, &want_f), ("h", &h, &want_h), ("m", &m, &want_m)] {
        for (i, (a, b)) in got.coeffs.iter().zip(want).enumerate() {
            for (j, (x, y)) in a.iter().zip(b).enumerate() {
                ensure!(x == y, "{name}_{i}{j} = {x}, expected {y}");
            }
        }
    }
    Ok("49 + 49 + 49 entries match".into())
}

fn counting_chain_shapes() -> Outcome {
    let mut shapes: Vec<Shape> = (1..=4)
        .flat_map(|k| (1..=4).map(move |m| (k, m)))
        .filter(|&(k, m)| k.min(m) <= 3)
        .map(|(k, m)| rect(k, m))
        .collect();
    shapes.extend(cell_subshapes(&rect(3, 3)).into_iter().filter(Shape::is_reflected_skew));
    let mut largest = 0;
    for shape in &shapes {
        let n = counting_chain(shape).map_err(|e| format!("{}: {e}", shape.to_json()))?;
        largest = largest.max(n);
    }
    ensure!(largest == 462, "largest chain value is {largest}, expected 462 from rect(3,4)");
    Ok(format!("{} shapes, up to {largest} facets", shapes.len()))
}

fn fh_identity() -> Outcome {
    let mut shapes = small_interior_shapes(4);
    shapes.extend(rectangles(4));
    shapes.push(rect(3, 4));
    on_all(&shapes, triangle_battery)?;
    Ok(format!("{} shapes", shapes.len()))
}

fn fm_identity() -> Outcome {
    let shapes = cell_subshapes(&rect(3, 4));
    on_all(&shapes, |shape| {
        let cat = Catalog::new(shape);
        let nk = NonkissingComplex::new(&cat).map_err(|e| e.to_string())?;
        let m = m_triangle(&WideLattice::new(&cat).map_err(|e| e.to_string())?);
        let f = f_triangle(&cat, &nk);
        verify_fh(&f, &h_triangle(&cat))?;
        verify_fm(&f, &m)
    })?;
    Ok(format!("{} subshapes of rect(3,4)", shapes.len()))
}

fn tableaux_shapes() -> Outcome {
    let shapes: Vec<Shape> = polyominoes(8)
        .into_iter()
        .filter(|s| s.is_reflected_skew() && s.cells().len() <= 8)
        .collect();
    on_all(&shapes, tableaux_battery)?;
    Ok(format!("{} shapes", shapes.len()))
}

fn lattice_shapes() -> Outcome {
    let mut shapes = small_interior_shapes(4);
    shapes.extend(rectangles(4));
    on_all(&shapes, lattice_battery)?;
    Ok(format!("{} shapes", shapes.len()))
}

fn shard_shapes() -> Outcome {
    let mut shapes = small_interior_shapes(4);
    shapes.extend(rectangles(4));
    on_all(&shapes, shard_battery)?;
    Ok(format!("{} shapes", shapes.len()))
}

fn fan_shapes() -> Outcome {
    let mut summary = Vec::new();
    for (k, m) in [(2, 3), (2, 4), (3, 3)] {
        let shape = rect(k, m);
        let report = fan_battery(&shape, 10_000, 1).map_err(|e| format!("rect({k},{m}): {e}"))?;
        ensure!(report.unique == report.points, "rect({k},{m}): {}/{}", report.unique, report.points);
        shard_battery(&shape).map_err(|e| format!("rect({k},{m}): {e}"))?;
        summary.push(format!("{}/{}", report.unique, report.points));
    }
    Ok(format!("unique-cone {}", summary.join(", ")))
}

fn shellings() -> Outcome {
    let mut shapes = small_interior_shapes(4);
    shapes.extend(rectangles(6));
    for (k, shape) in shapes.iter().enumerate() {
        shelling_check(shape, 5, k as u64).map_err(|e| format!("{}: {e}", shape.to_json()))?;
    }
    Ok(format!("{} shapes x 5 extensions", shapes.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("golden polynomials for rect(2,3)", golden_rect23),
        ("rect(3,4) F, H and M triangles", golden_rect34),
        ("counting chain", counting_chain_shapes),
        ("F=H identity", fh_identity),
        ("F=M identity on subshapes of rect(3,4)", fm_identity),
        ("tableaux, H=H' and twist", tableaux_shapes),
        ("lattice battery", lattice_shapes),
        ("shard battery", shard_shapes),
        ("fan battery", fan_shapes),
        ("shellings", shellings),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({detail}) [{secs:.2}s]", k + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {e} [{secs:.2}s]", k + 1);
            }
        }
    }
    println!("{}/10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
