//! Running a scenario document in process.
use crchern::kahler::Scenario;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = r#"{
        "factors": [{"dim": 1, "hsc": "2"}, {"dim": 1, "hsc": "-2"}],
        "samples": 4,
        "seed": 9,
        "tolerances": {"chern_tensor": 1e-7}
    }"#;
    let scenario = Scenario::from_json(text)?;
    let outcome = scenario.to_batch()?.run()?;
    println!("{}", serde_json::to_string_pretty(&outcome.report)?);

    match Scenario::from_json(r#"{"factors": []}"#) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => println!("unexpected: empty scenario accepted"),
    }
    Ok(())
}
