import io

import pytest

from qcmceliece.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def fields(text):
    return dict(line.split(": ", 1) for line in text.splitlines() if ": " in line)


def test_analyze_table_and_csv():
    code, out, _ = call("analyze", "--table1")
    assert code == 0
    assert "deviation" in out and "t=20" in out
    code, out, _ = call("analyze", "--rows", "80,101,15,3", "--csv")
    assert code == 0
    assert out.splitlines()[1].startswith("80,101,15,3,17,35,35,")
    code, out, _ = call("analyze", "--keysizes")
    assert "460647" in out and "520047" in out and "1537536" in out


def test_construct_both_orientations(tmp_path):
    code, out, _ = call("construct", "--p", 5, "--m", 2, "--l", 3, "--seed", 3)
    assert code == 0 and fields(out)["ok"] == "true"
    spec = tmp_path / "c.spec"
    code, out, _ = call("construct", "--p", 29, "--m", 2, "--t-r", 3, "--seed", 1, "--orientation", "stack", "--out", spec)
    assert code == 0 and spec.read_text().startswith("QCSPEC v1")
    assert fields(out)["max_overlap"] == "1"


@pytest.mark.parametrize(
    "keyargs",
    [
        ("--system", "nr", "--p", 5, "--m", 2, "--l", 3, "--t", 1),
        ("--system", "me", "--p", 29, "--m", 2, "--t-r", 3, "--t", 1),
    ],
)
def test_byte_roundtrip(tmp_path, keyargs):
    key, pub = tmp_path / "k", tmp_path / "k.pub"
    assert call("keygen", *keyargs, "--seed", 7, "--out", key, "--pub", pub)[0] == 0
    msg = tmp_path / "msg"
    msg.write_bytes(b"\x00\x01quasi-cyclic\xff")
    ct, back = tmp_path / "ct", tmp_path / "back"
    assert call("encrypt", "--key", pub, "--in", msg, "--out", ct, "--seed", 3)[0] == 0
    assert call("decrypt", "--key", key, "--in", ct, "--out", back)[0] == 0
    assert back.read_bytes() == msg.read_bytes()


def test_tampered_ciphertext(tmp_path):
    key = tmp_path / "k"
    call("keygen", "--p", 5, "--m", 2, "--l", 3, "--t", 1, "--seed", 7, "--out", key)
    msg = tmp_path / "msg"
    msg.write_bytes(b"hello")
    ct = tmp_path / "ct"
    call("encrypt", "--key", key, "--in", msg, "--out", ct)
    lines = ct.read_text().splitlines()
    lines[2] = " ".join("1" for _ in lines[2].split())  # full-weight word
    ct.write_text("\n".join(lines) + "\n")
    back = tmp_path / "back"
    code, _, err = call("decrypt", "--key", key, "--in", ct, "--out", back)
    assert code == 3 and "invalid ciphertext" in err
    assert not back.exists()


def test_deterministic_files(tmp_path):
    for name in ("a", "b"):
        call("keygen", "--system", "me", "--p", 29, "--m", 2, "--t-r", 3, "--t", 1, "--seed", 5, "--out", tmp_path / name)
    assert (tmp_path / "a").read_text() == (tmp_path / "b").read_text()
    msg = tmp_path / "msg"
    msg.write_bytes(b"same")
    for name in ("ca", "cb"):
        call("encrypt", "--key", tmp_path / "a", "--in", msg, "--out", tmp_path / name, "--seed", 9)
    assert (tmp_path / "ca").read_text() == (tmp_path / "cb").read_text()


def test_audit_output():
    code, out, _ = call("audit", "--p", 5, "--m", 2, "--l", 3, "--seed", 1)
    f = fields(out)
    assert code == 0
    assert int(f["aut_size"]) <= 20 and f["automorphisms_verified"] == "true"
    assert f["two_transitive"] == "false"


def test_attack_output():
    code, out, _ = call("attack", "--p", 29, "--t-r", 3, "--seed", 2)
    f = fields(out)
    assert code == 0 and f["success"] == "true" and f["plaintext_match"] == "true"
    code, out, _ = call("attack", "--p", 29, "--t-r", 3, "--seed", 2, "--stern")
    assert code == 0 and fields(out)["success"] == "true"


@pytest.mark.parametrize(
    "argv,code",
    [
        (("frobnicate",), 1),
        (("construct", "--p", 5), 1),
        (("construct", "--p", 4, "--m", 2, "--seed", 0), 2),
        (("keygen", "--system", "me", "--p", 13, "--m", 2, "--t-r", 1, "--t", 1, "--seed", 0, "--out", "/dev/null"), 2),
        (("encrypt", "--key", "/nonexistent/key", "--in", "/nonexistent/msg"), 1),
        (("audit", "--p", 11, "--m", 2, "--seed", 0), 4),
        (("construct", "--p", 5, "--m", 2, "--seed", "-1"), 1),
    ],
)
def test_exit_codes(argv, code):
    got, _, err = call(*argv)
    assert got == code
    assert err.startswith("error:") or code == 1
