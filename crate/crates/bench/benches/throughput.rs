use criterion::{black_box, criterion_group, criterion_main, BatchSize, Criterion, Throughput};
use levelforge::corpus::{attach_levels, bucket, filter_pair, FilterConfig, Labeler};
use levelforge::genmetrics::{sari, EvalInstance};
use levelforge::readability::fkgl_text;
use levelforge::text::{count_syllables, tokenize};
use levelforge::ParaphrasePair;

const WORDS: &[&str] = &[
    "the",
    "committee",
    "approved",
    "a",
    "remarkably",
    "complicated",
    "proposal",
    "after",
    "weeks",
    "of",
    "negotiation",
    "between",
    "regional",
    "governments",
    "and",
    "local",
    "residents",
    "who",
    "objected",
    "strongly",
];

fn sentence(i: usize, len: usize) -> String {
    let mut s: Vec<&str> = (0..len).map(|k| WORDS[(i * 7 + k * 3) % WORDS.len()]).collect();
    s[0] = "The";
    let mut out = s.join(" ");
    out.push('.');
    out
}

fn pairs(n: usize) -> Vec<ParaphrasePair> {
    (0..n)
        .map(|i| {
            let src = sentence(i, 12 + i % 9);
            let tgt = sentence(i + 1, 8 + i % 5);
            ParaphrasePair::new(i.to_string(), &src, &tgt, Some(0.7)).unwrap()
        })
        .collect()
}

fn text(c: &mut Criterion) {
    let corpus: Vec<String> = (0..1000).map(|i| sentence(i, 20)).collect();
    let bytes: usize = corpus.iter().map(String::len).sum();
    let mut g = c.benchmark_group("text");
    g.throughput(Throughput::Bytes(bytes as u64));
    g.bench_function("tokenize", |b| b.iter(|| corpus.iter().map(|s| tokenize(black_box(s)).len()).sum::<usize>()));
    g.bench_function("syllables", |b| {
        b.iter(|| corpus.iter().flat_map(|s| s.split(' ')).map(|w| count_syllables(black_box(w))).sum::<u32>())
    });
    g.bench_function("fkgl", |b| b.iter(|| corpus.iter().filter_map(|s| fkgl_text(black_box(s)).ok()).sum::<f64>()));
    g.finish();
}

fn metrics(c: &mut Criterion) {
    let inst: Vec<EvalInstance> = (0..200)
        .map(|i| {
            EvalInstance::new(sentence(i, 20), sentence(i + 2, 14), vec![sentence(i + 1, 12), sentence(i + 3, 15)])
                .unwrap()
        })
        .collect();
    let mut g = c.benchmark_group("metrics");
    g.throughput(Throughput::Elements(inst.len() as u64));
    g.bench_function("sari", |b| b.iter(|| inst.iter().map(|x| sari(black_box(x)).unwrap().sari).sum::<f64>()));
    g.finish();
}

fn pipeline(c: &mut Criterion) {
    let input = pairs(10_000);
    let cfg = FilterConfig::default();
    let labeler = Labeler::Fkgl;
    let mut g = c.benchmark_group("pipeline");
    g.throughput(Throughput::Elements(input.len() as u64));
    g.sample_size(10);
    g.bench_function("filter_label_bucket", |b| {
        b.iter_batched(
            || input.clone(),
            |batch| {
                let mut kept = 0usize;
                for mut p in batch {
                    if filter_pair(&p, &cfg).is_some() || attach_levels(&mut p, &labeler).is_some() {
                        continue;
                    }
                    kept += bucket(&p).unwrap().is_some() as usize;
                }
                kept
            },
            BatchSize::LargeInput,
        )
    });
    g.finish();
}

criterion_group!(benches, text, metrics, pipeline);
criterion_main!(benches);
