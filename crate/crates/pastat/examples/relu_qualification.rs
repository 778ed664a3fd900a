//! Sum-rule qualifications of the SVM loss and a two-layer ReLU network on a
//! small dataset.
//!
//! Run with `cargo run --example relu_qualification`.

use pastat::apps::{relu2_qualification, svm_pa_part, LabeledDataset, ReluUnit};
use pastat::rational::{int, ivec};
use pastat::Caps;

fn main() -> pastat::Result<()> {
    let caps = Caps::default();
    let raw = vec![ivec(&[0, -2]), ivec(&[0, -1]), ivec(&[1, 0]), ivec(&[0, 1])];
    let data = LabeledDataset::from_raw(raw, vec![int(1), int(-1), int(1), int(-1)])?;

    let units = [ReluUnit { w: ivec(&[1, 1, -1]), u: int(1) }];
    let report = relu2_qualification(&data, &units, &ivec(&[1, 1, 1, -1]), &caps)?;
    println!("ReLU: {}", serde_json::to_string(&report).unwrap());
    println!("strongest qualification: {:?}", report.strongest());

    let (_, svm) = svm_pa_part(&data, &int(1), &ivec(&[1, 0, 0]), &caps)?;
    println!("SVM: {}", serde_json::to_string(&svm).unwrap());
    Ok(())
}
