"""User accounts with salted credential digests and bearer session tokens.

Profiles are persisted append-only, one JSON record per line, so a
registration writes exactly one line. Passwords are stored only as salted
PBKDF2 digests; the digest string records the algorithm and iteration
count alongside the salt for forward migration.
"""

from __future__ import annotations

import hashlib
import hmac
import json
import secrets
import threading
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from pathlib import Path
from typing import Callable

from .errors import AuthenticationError, ConflictError, InvalidInputError

DIGEST_ALGORITHM = "pbkdf2_sha256"
PBKDF2_ITERATIONS = 60_000
SALT_BYTES = 16
TOKEN_BYTES = 32  # 256 bits of entropy
DEFAULT_TOKEN_LIFETIME_MINUTES = 24 * 60

Clock = Callable[[], datetime]


def _utc_now() -> datetime:
    return datetime.now(timezone.utc)


def hash_password(password: str, *, salt: bytes | None = None) -> str:
    salt = salt if salt is not None else secrets.token_bytes(SALT_BYTES)
    digest = hashlib.pbkdf2_hmac("sha256", password.encode(), salt, PBKDF2_ITERATIONS)
    return f"{DIGEST_ALGORITHM}${PBKDF2_ITERATIONS}${salt.hex()}${digest.hex()}"


def verify_password(password: str, stored: str) -> bool:
    try:
        algorithm, iterations, salt_hex, digest_hex = stored.split("$")
        if algorithm != DIGEST_ALGORITHM:
            return False
        candidate = hashlib.pbkdf2_hmac(
            "sha256", password.encode(), bytes.fromhex(salt_hex), int(iterations)
        )
        return hmac.compare_digest(candidate.hex(), digest_hex)
    except (ValueError, TypeError):
        return False


@dataclass(frozen=True)
class UserProfile:
    username: str
    password_digest: str
    address: str | None = None
    occupation: str | None = None
    qualification: str | None = None
    interests: tuple[str, ...] = ()
    created_at: datetime | None = None


@dataclass(frozen=True)
class SessionToken:
    token: str
    username: str
    issued_at: datetime
    expires_at: datetime


class UserStore:
    """Registered accounts plus the live session-token table.

    Registrations are serialized behind a lock; reads are lock-free.
    Tokens live in memory only and do not survive a restart.
    """

    def __init__(
        self,
        path: str | Path | None = None,
        token_lifetime_minutes: float = DEFAULT_TOKEN_LIFETIME_MINUTES,
        clock: Clock = _utc_now,
    ):
        if token_lifetime_minutes <= 0:
            raise InvalidInputError("token lifetime must be positive")
        self._path = Path(path) if path is not None else None
        self._lifetime = timedelta(minutes=token_lifetime_minutes)
        self._clock = clock
        self._profiles: dict[str, UserProfile] = {}
        self._tokens: dict[str, SessionToken] = {}
        self._lock = threading.Lock()
        if self._path is not None and self._path.exists():
            self._load()

    def _load(self) -> None:
        for line in self._path.read_text(encoding="utf-8").splitlines():
            if not line.strip():
                continue
            record = json.loads(line)
            profile = UserProfile(
                username=record["username"],
                password_digest=record["password_digest"],
                address=record.get("address"),
                occupation=record.get("occupation"),
                qualification=record.get("qualification"),
                interests=tuple(record.get("interests") or ()),
                created_at=datetime.fromisoformat(record["created_at"]),
            )
            self._profiles[profile.username] = profile

    def _append(self, profile: UserProfile) -> None:
        if self._path is None:
            return
        record = {
            "username": profile.username,
            "password_digest": profile.password_digest,
            "address": profile.address,
            "occupation": profile.occupation,
            "qualification": profile.qualification,
            "interests": list(profile.interests),
            "created_at": profile.created_at.isoformat(),
        }
        self._path.parent.mkdir(parents=True, exist_ok=True)
        with self._path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(record) + "\n")

    def register(
        self,
        username: str,
        password: str,
        address: str | None = None,
        occupation: str | None = None,
        qualification: str | None = None,
        interests: tuple[str, ...] | list[str] = (),
    ) -> UserProfile:
        if not username:
            raise InvalidInputError("username must be non-empty")
        if not password:
            raise InvalidInputError("password must be non-empty")
        with self._lock:
            if username in self._profiles:
                raise ConflictError(f"username {username!r} is already taken")
            profile = UserProfile(
                username=username,
                password_digest=hash_password(password),
                address=address,
                occupation=occupation,
                qualification=qualification,
                interests=tuple(interests),
                created_at=self._clock(),
            )
            self._profiles[username] = profile
            self._append(profile)
        return profile

    def authenticate(self, username: str, password: str) -> SessionToken:
        """Issue a session token iff the credentials match.

        Every failure raises the same error kind, and an unknown username
        still pays for one digest computation so the two cases are not
        separable by timing.
        """
        profile = self._profiles.get(username)
        if profile is None:
            hash_password(password)
            raise AuthenticationError("invalid credentials")
        if not verify_password(password, profile.password_digest):
            raise AuthenticationError("invalid credentials")
        issued = self._clock()
        token = SessionToken(
            token=secrets.token_urlsafe(TOKEN_BYTES),
            username=username,
            issued_at=issued,
            expires_at=issued + self._lifetime,
        )
        with self._lock:
            self._tokens[token.token] = token
        return token

    def validate_token(self, token: str) -> str:
        """Username owning a live token; expired or unknown tokens are rejected."""
        session = self._tokens.get(token)
        if session is None or self._clock() >= session.expires_at:
            raise AuthenticationError("invalid or expired token")
        return session.username

    def get_profile(self, username: str) -> UserProfile | None:
        return self._profiles.get(username)

    def __len__(self) -> int:
        return len(self._profiles)
