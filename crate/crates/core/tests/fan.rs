use grid_catalan::checks::{fan_battery, shard_battery, shelling_check};
use grid_catalan::gallery::{rectangles, small_interior_shapes};
use grid_catalan::Shape;

#[test]
fn fan_on_rectangles() {
    for shape in rectangles(6) {
        let report = fan_battery(&shape, 500, 7).unwrap_or_else(|e| panic!("{shape:?}: {e}"));
        assert_eq!(report.unique, report.points);
    }
}

#[test]
fn fan_on_small_interior_shapes() {
    for (k, shape) in small_interior_shapes(3).iter().enumerate() {
        fan_battery(shape, 50, k as u64).unwrap_or_else(|e| panic!("{shape:?}: {e}"));
    }
}

#[test]
fn shards_on_rectangles() {
    for shape in rectangles(6) {
        shard_battery(&shape).unwrap_or_else(|e| panic!("{shape:?}: {e}"));
    }
}

#[test]
fn shards_on_small_interior_shapes() {
    for shape in small_interior_shapes(4) {
        shard_battery(&shape).unwrap_or_else(|e| panic!("{shape:?}: {e}"));
    }
}

#[test]
fn shellings() {
    for shape in rectangles(6).into_iter().chain(small_interior_shapes(3)) {
        shelling_check(&shape, 5, 11).unwrap_or_else(|e| panic!("{shape:?}: {e}"));
    }
    shelling_check(&Shape::rect(3, 4).unwrap(), 5, 3).unwrap();
}
