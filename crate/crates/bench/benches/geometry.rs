use coxkit::num::ivec;
use coxkit::{
    class_group, convex_hull_2d, enumerate_chambers, hilbert_basis, lattice_points, normal_fan, standard_fan,
    Cone, StandardFan,
};
use coxkit_bench::{flagship, rank3_grading, second_polygon};
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

fn polyhedra(c: &mut Criterion) {
    let p = flagship();
    c.bench_function("lattice_points_flagship", |b| b.iter(|| lattice_points(black_box(&p), 1).unwrap()));
    let verts = second_polygon().vertices().to_vec();
    c.bench_function("hull_second_polygon", |b| b.iter(|| convex_hull_2d(black_box(&verts)).unwrap()));
    let cone = Cone::from_generators(&[ivec(&[1, 0, 0]), ivec(&[0, 1, 0]), ivec(&[1, 2, 7])], 3).unwrap();
    c.bench_function("hilbert_basis_det7", |b| b.iter(|| hilbert_basis(black_box(&cone)).unwrap()));
}

fn toric(c: &mut Criterion) {
    let p = flagship();
    c.bench_function("normal_fan_flagship", |b| b.iter(|| normal_fan(black_box(&p)).unwrap()));
    let wp = standard_fan(&StandardFan::WeightedProjective(vec![12, 13, 17])).unwrap();
    c.bench_function("class_group_wp", |b| b.iter(|| class_group(black_box(&wp)).unwrap()));
    let g = rank3_grading();
    c.bench_function("chambers_rank3", |b| b.iter(|| enumerate_chambers(black_box(&g)).unwrap()));
}

criterion_group!(benches, polyhedra, toric);
criterion_main!(benches);
