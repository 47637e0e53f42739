use chartforge_core::render::*;
use chartforge_core::synth::*;

#[test]
#[ignore]
fn dump_sample_charts() {
    let dist = DistributionSpec::new(DistributionKind::Normal { mean: 10.0, std: 3.0 }, 400);
    for (i, ct) in ChartType::ALL.into_iter().enumerate() {
        let seed = 40 + i as u64;
        let table = match ct {
            ChartType::Histogram => synth_histogram_table(&dist, 6, seed).unwrap(),
            ChartType::Box => synth_boxplot_table(&dist, 3, seed).unwrap(),
            _ => synth_series_table(&SynthConfig::new(ct, seed), seed),
        };
        let spec = ChartSpec::new(ct, seed);
        let out = render(&table, &spec, seed).unwrap();
        std::fs::write(format!("/tmp/chart_{}.png", ct.name()), &out.png).unwrap();
        eprintln!("{}: {} bytes, {} boxes\n{}", ct.name(), out.png.len(), out.element_boxes.len(), table.to_markdown());
    }
}
