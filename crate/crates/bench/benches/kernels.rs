use coclass::artin::artin_pattern;
use coclass::families::{construct, FamilyLabel};
use coclass::iso::{are_isomorphic, fingerprint};
use coclass::pcover::{immediate_descendants, p_cover};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn group(s: &str) -> coclass::pc::PcPresentation {
    construct(&s.parse::<FamilyLabel>().unwrap()).unwrap()
}

fn arithmetic(c: &mut Criterion) {
    let g = group("M[e=6,i=6]");
    let (a, b) = (g.element_at(12_345), g.element_at(987_654));
    c.bench_function("multiply 3^14", |bch| bch.iter(|| g.mul(black_box(&a), black_box(&b))));
    c.bench_function("inverse 3^14", |bch| bch.iter(|| g.inverse(black_box(&a))));
    c.bench_function("consistency 3^14", |bch| bch.iter(|| g.check_consistency()));
}

fn invariants(c: &mut Criterion) {
    let g = group("V[e=4,i=3,kind=b16]");
    c.bench_function("artin pattern 3^9", |bch| bch.iter(|| artin_pattern(black_box(&g)).unwrap()));
    c.bench_function("fingerprint 3^9", |bch| bch.iter(|| fingerprint(black_box(&g))));
    let h = group("MM[e=2,i=3]");
    let k = group("MM[e=2,i=3]");
    c.bench_function("isomorphism 3^8", |bch| bch.iter(|| are_isomorphic(&h, &k)));
}

fn descendants(c: &mut Criterion) {
    let root = group("M[e=3,i=1]");
    let mut grp = c.benchmark_group("cover");
    grp.sample_size(10);
    grp.bench_function("p-cover of the root", |bch| bch.iter(|| p_cover(black_box(&root)).unwrap()));
    grp.bench_function("step-2 descendants of the root", |bch| bch.iter(|| immediate_descendants(&root, 2).unwrap()));
    grp.finish();
}

criterion_group!(benches, arithmetic, invariants, descendants);
criterion_main!(benches);
