use catalog::{default_catalog_dir, human_table, load_catalog, parse_filter, verify_all};
use polyexact::rational::ten_to_minus;

#[test]
fn shipped_catalog_verifies() {
    let entries = load_catalog(&default_catalog_dir()).unwrap();
    let summary = verify_all(&entries, &[], &ten_to_minus(9), digraph::DEFAULT_CYCLE_CAP);
    println!("{}", human_table(&summary));
    assert!(summary.all_passed(), "{}", human_table(&summary));
}

#[test]
fn filters_select_groups() {
    let entries = load_catalog(&default_catalog_dir()).unwrap();
    let count = |f: &str| entries.iter().filter(|e| e.matches(&parse_filter(f).unwrap())).count();
    assert_eq!(count("group=single-orbit"), 6);
    assert_eq!(count("family=l6a2,kind=folding-script"), 11);
    assert_eq!(count("family=nothing"), 0);
    let empty = verify_all(&entries, &parse_filter("family=nothing").unwrap(), &ten_to_minus(9), 10);
    assert_eq!(empty.total, 0);
    assert!(empty.all_passed());
}
