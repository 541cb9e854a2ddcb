use grid_catalan::checks::{counting_chain, tableaux_battery, triangle_battery};
use grid_catalan::complexes::NonkissingComplex;
use grid_catalan::gallery::{cell_subshapes, polyominoes, rectangles, small_interior_shapes};
use grid_catalan::triangles::{f_triangle, h_triangle, m_triangle, verify_fh, verify_fm};
use grid_catalan::wide::WideLattice;
use grid_catalan::{Catalog, Shape};

fn lower(rows: &[&[i128]]) -> Vec<Vec<i128>> {
    rows.iter()
        .map(|row| {
            let mut v = row.to_vec();
            v.resize(rows.len(), 0);
            v
        })
        .collect()
}

#[test]
fn rect34_triangles() {
    let shape = Shape::rect(3, 4).unwrap();
    let cat = Catalog::new(&shape);
    let nk = NonkissingComplex::new(&cat).unwrap();
    let f = f_triangle(&cat, &nk);
    let h = h_triangle(&cat);
    let m = m_triangle(&WideLattice::new(&cat).unwrap());
    assert_eq!(
        f.coeffs,
        lower(&[
            &[1],
            &[22, 6],
            &[141, 82, 15],
            &[395, 344, 123, 20],
            &[548, 620, 319, 94, 15],
            &[371, 506, 332, 134, 37, 6],
            &[98, 154, 121, 60, 22, 6, 1],
        ])
    );
    assert_eq!(
        h.coeffs,
        lower(&[
            &[1],
            &[16, 6],
            &[46, 52, 15],
            &[31, 76, 63, 20],
            &[4, 20, 40, 34, 15],
            &[0, 0, 3, 6, 7, 6],
            &[0, 0, 0, 0, 0, 0, 1],
        ])
    );
    assert_eq!(
        m.coeffs,
        lower(&[
            &[1],
            &[-22, 22],
            &[141, -254, 113],
            &[-395, 965, -760, 190],
            &[548, -1627, 1726, -760, 113],
            &[-371, 1265, -1627, 965, -254, 22],
            &[98, -371, 548, -395, 141, -22, 1],
        ])
    );
    assert_eq!(h.row_sums(), vec![1, 22, 113, 190, 113, 22, 1]);
    verify_fh(&f, &h).unwrap();
    verify_fm(&f, &m).unwrap();
}

#[test]
fn triangles_on_small_shapes() {
    for shape in rectangles(6).into_iter().chain(small_interior_shapes(4)) {
        triangle_battery(&shape).unwrap_or_else(|e| panic!("{}: {e}", shape.to_json()));
    }
}

#[test]
fn fm_on_subshapes_of_rect34() {
    for shape in cell_subshapes(&Shape::rect(3, 4).unwrap()) {
        triangle_battery(&shape).unwrap_or_else(|e| panic!("{}: {e}", shape.to_json()));
    }
}

#[test]
fn tableaux_on_reflected_skew_shapes() {
    let shapes: Vec<Shape> = polyominoes(8)
        .into_iter()
        .filter(|s| s.is_reflected_skew() && s.cells().len() <= 8)
        .collect();
    // Bounded French skew diagrams are rectangles: 1xm, 2x2, 2x3, 2x4 and transposes.
    assert_eq!(shapes.len(), 8 + 7 + 1 + 2 + 2);
    for shape in shapes.iter().chain(&[Shape::rect(3, 3).unwrap(), Shape::rect(3, 4).unwrap()]) {
        tableaux_battery(shape).unwrap_or_else(|e| panic!("{}: {e}", shape.to_json()));
    }
}

#[test]
fn counting_chain_on_test_shapes() {
    let mut shapes = rectangles(6);
    shapes.extend(cell_subshapes(&Shape::rect(3, 3).unwrap()).into_iter().filter(Shape::is_reflected_skew));
    for shape in shapes {
        counting_chain(&shape).unwrap_or_else(|e| panic!("{}: {e}", shape.to_json()));
    }
    assert_eq!(counting_chain(&Shape::rect(3, 4).unwrap()), Ok(462));
}
