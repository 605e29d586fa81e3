from datetime import datetime, timedelta, timezone

import pytest
from hypothesis import given, strategies as st

from clickrank.errors import AuthenticationError, ConflictError, InvalidInputError
from clickrank.users import UserStore, hash_password, verify_password

T0 = datetime(2026, 8, 10, 12, 0, 0, tzinfo=timezone.utc)


class TestRegister:
    def test_happy_path(self):
        store = UserStore()
        profile = store.register("alice", "pw1", occupation="student")
        assert profile.username == "alice"
        assert profile.occupation == "student"
        assert profile.password_digest != "pw1"
        assert "pw1" not in profile.password_digest

    def test_duplicate_username(self):
        store = UserStore()
        store.register("alice", "pw1")
        with pytest.raises(ConflictError):
            store.register("alice", "pw2")

    def test_empty_password(self):
        store = UserStore()
        with pytest.raises(InvalidInputError):
            store.register("bob", "")

    def test_empty_username(self):
        store = UserStore()
        with pytest.raises(InvalidInputError):
            store.register("", "pw")


class TestAuthenticate:
    def test_token_issued_on_match(self):
        store = UserStore()
        store.register("alice", "pw1")
        session = store.authenticate("alice", "pw1")
        assert session.username == "alice"
        assert session.expires_at > session.issued_at
        assert len(session.token) >= 32

    def test_wrong_password(self):
        store = UserStore()
        store.register("alice", "pw1")
        with pytest.raises(AuthenticationError):
            store.authenticate("alice", "wrong")

    def test_unknown_user_same_error_kind(self):
        store = UserStore()
        store.register("alice", "pw1")
        try:
            store.authenticate("alice", "wrong")
        except AuthenticationError as exc:
            wrong_pw = str(exc)
        try:
            store.authenticate("ghost", "pw")
        except AuthenticationError as exc:
            assert str(exc) == wrong_pw

    @given(
        st.from_regex(r"[a-z]{1,12}", fullmatch=True),
        st.from_regex(r"[a-zA-Z0-9]{1,16}", fullmatch=True),
    )
    def test_register_then_authenticate_roundtrip(self, username, password):
        store = UserStore()
        store.register(username, password)
        assert store.authenticate(username, password).username == username


class TestTokens:
    def test_expired_token_rejected(self):
        now = [T0]
        store = UserStore(token_lifetime_minutes=60, clock=lambda: now[0])
        store.register("alice", "pw")
        session = store.authenticate("alice", "pw")
        assert store.validate_token(session.token) == "alice"
        now[0] = T0 + timedelta(minutes=61)
        with pytest.raises(AuthenticationError):
            store.validate_token(session.token)

    def test_unknown_token_rejected(self):
        store = UserStore()
        with pytest.raises(AuthenticationError):
            store.validate_token("nope")


class TestPersistence:
    def test_reload_from_file(self, tmp_path):
        path = tmp_path / "users.jsonl"
        store = UserStore(path)
        store.register("alice", "pw1", address="home", interests=["cards"])
        reloaded = UserStore(path)
        assert reloaded.authenticate("alice", "pw1").username == "alice"
        assert reloaded.get_profile("alice").interests == ("cards",)

    def test_one_line_per_registration(self, tmp_path):
        path = tmp_path / "users.jsonl"
        store = UserStore(path)
        store.register("alice", "pw1")
        store.register("bob", "pw2")
        assert len(path.read_text().strip().splitlines()) == 2

    def test_raw_password_never_persisted(self, tmp_path):
        path = tmp_path / "users.jsonl"
        store = UserStore(path)
        store.register("alice", "hunter2secret")
        assert b"hunter2secret" not in path.read_bytes()


class TestDigests:
    def test_verify_roundtrip(self):
        stored = hash_password("s3cret")
        assert verify_password("s3cret", stored)
        assert not verify_password("other", stored)

    def test_algorithm_recorded(self):
        stored = hash_password("pw")
        assert stored.startswith("pbkdf2_sha256$")

    def test_salted(self):
        assert hash_password("pw") != hash_password("pw")

    def test_garbage_digest_rejected(self):
        assert not verify_password("pw", "not-a-digest")
