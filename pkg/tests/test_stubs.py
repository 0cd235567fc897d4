import json

import pytest

from headergen.stubs import (DuplicateFqn, StubError, StubFormatError, TypeStubDB, default_stub_dir,
                             load_stub_db, load_stub_file, parse_stub, split_type)


def pkg(**kw):
    return parse_stub({"package": "p", **kw})


def test_shipped_db_loads_and_resolves():
    db = load_stub_db(default_stub_dir())
    assert db.resolve("seaborn.load_dataset") == "seaborn.utils.load_dataset"
    assert db.resolve("pandas.read_csv") == "pandas.io.parsers.readers.read_csv"
    assert db.return_type("pandas.core.frame.DataFrame.head") == ["pandas.core.frame.DataFrame"]
    assert db.resolve("pandas.nope") is None


def test_split_type_nested():
    assert split_type("builtins.tuple[a.B,c.D[e.F]]") == ("builtins.tuple", ("a.B", "c.D[e.F]"))
    assert split_type("a.B") == ("a.B", ())


def test_unknown_key_rejected():
    with pytest.raises(StubFormatError):
        parse_stub({"package": "p", "funcs": {}})


def test_bad_return_rejected():
    with pytest.raises(StubFormatError):
        pkg(functions={"p.f": {"returns": 3}})


def test_duplicate_fqn_across_packages():
    a = pkg(functions={"p.f": {"returns": ["builtins.int"]}})
    b = parse_stub({"package": "q", "functions": {"p.f": {"returns": ["builtins.int"]}}})
    with pytest.raises(DuplicateFqn):
        TypeStubDB([a, b])


def test_export_cycle_detected():
    with pytest.raises(StubFormatError, match="cyclic"):
        TypeStubDB([pkg(exports={"p.a": "p.b", "p.b": "p.a"})])


def test_dangling_export_detected():
    with pytest.raises(StubFormatError):
        TypeStubDB([pkg(exports={"p.a": "p.missing"})])


def test_duplicate_json_key_rejected(tmp_path):
    f = tmp_path / "x.stub.json"
    f.write_text('{"package": "p", "package": "q"}', encoding="utf-8")
    with pytest.raises(StubFormatError):
        load_stub_file(f)


def test_missing_dir(tmp_path):
    with pytest.raises(StubError):
        load_stub_db(tmp_path / "none")


def test_empty_dir_gives_empty_db(tmp_path):
    assert len(load_stub_db(tmp_path)) == 0


def test_shipped_files_are_valid_json():
    for f in default_stub_dir().glob("*.stub.json"):
        assert json.loads(f.read_text(encoding="utf-8"))["package"]
