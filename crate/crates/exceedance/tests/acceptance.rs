// acceptance criteria run here; filled in as the library lands
#[test]
fn placeholder() {}
