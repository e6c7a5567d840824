"""
SQLAlchemy database wrapper for the optional Ω-tower cache.

The cache is a SQLite file towers.db inside TATECOH_CACHE_DIR. Without a
cache directory database functionality is disabled and every repository
call degrades to a no-op.
"""

import threading
from contextlib import contextmanager
from pathlib import Path
from typing import Generic, List, Optional, Type, TypeVar

from sqlalchemy import create_engine, text
from sqlalchemy.exc import SQLAlchemyError
from sqlalchemy.orm import declarative_base, sessionmaker

from src.config import config
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

# Type variables for generic types
T = TypeVar('T')

# SQLAlchemy base class for all models
Base = declarative_base()

CACHE_FILE = "towers.db"


class DatabaseManager:
    """
    Database connection and session management.

    Accepts a SQLAlchemy URL or a plain SQLite file path.
    """

    def __init__(self, database_url: Optional[str] = None):
        """
        Initialize database manager.

        Args:
            database_url: Database connection string or SQLite file path.
                          If empty/None, database functionality is disabled.
        """
        self.database_url = (database_url or "").strip()
        self.engine = None
        self.SessionLocal = None
        self.is_connected = False

        if not self.database_url:
            logger.debug("No database URL provided, tower cache disabled")
            return

        self._process_database_url()

    def _process_database_url(self):
        """Turn plain file paths into sqlite URLs, creating parent directories."""
        if not self.database_url.startswith('sqlite:'):
            sqlite_path = Path(self.database_url)
            sqlite_path.parent.mkdir(parents=True, exist_ok=True)
            self.database_url = f"sqlite:///{sqlite_path.resolve()}"
        logger.info(f"Database URL configured: {self.database_url}")

    def connect(self) -> bool:
        """
        Establish database connection and create tables.

        Returns:
            bool: True if connection successful, False otherwise
        """
        if not self.database_url:
            logger.warning("No database URL configured, cannot connect")
            return False

        if self.is_connected:
            return True

        try:
            self.engine = create_engine(
                self.database_url,
                connect_args={"check_same_thread": False},  # towers are filled from worker threads
                echo=False
            )
            with self.engine.connect() as conn:
                conn.execute(text("SELECT 1"))

            self.SessionLocal = sessionmaker(autocommit=False, autoflush=False, bind=self.engine)
            self.create_tables()

            self.is_connected = True
            logger.info(f"✅ Tower cache connected: {self.database_url}")
            return True

        except SQLAlchemyError as e:
            logger.error(f"❌ Database connection failed: {e}")
            self.engine = None
            self.SessionLocal = None
            return False

    def disconnect(self):
        """Close database connection and cleanup resources."""
        if self.engine:
            try:
                self.engine.dispose()
                logger.info("✅ Tower cache disconnected")
            except SQLAlchemyError as e:
                logger.error(f"❌ Error disconnecting database: {e}")
            finally:
                self.engine = None
                self.SessionLocal = None
                self.is_connected = False

    def create_tables(self):
        """Create all database tables defined in models."""
        if not self.engine:
            logger.warning("No database engine, cannot create tables")
            return

        # Registers TowerRecord on Base.metadata
        import app.models  # noqa: F401

        try:
            Base.metadata.create_all(bind=self.engine)
            logger.debug("Database tables created/verified")
        except SQLAlchemyError as e:
            logger.error(f"❌ Error creating database tables: {e}")
            raise

    @contextmanager
    def get_session(self):
        """
        Get a database session with automatic cleanup.

        Usage:
            with db.get_session() as session:
                # Use session here
                pass
        """
        if not self.is_connected or not self.SessionLocal:
            raise RuntimeError("Database not connected. Call connect() first.")

        session = self.SessionLocal()
        try:
            yield session
            session.commit()
        except Exception as e:
            session.rollback()
            logger.error(f"❌ Database session error: {e}")
            raise
        finally:
            session.close()

    def health_check(self) -> dict:
        """
        Perform database health check.

        Returns:
            dict: Health status information
        """
        if not self.database_url:
            return {
                'status': 'disabled',
                'message': 'Tower cache disabled (no cache directory configured)'
            }

        if not self.is_connected:
            return {
                'status': 'disconnected',
                'message': 'Database not connected'
            }

        try:
            with self.get_session() as session:
                result = session.execute(text("SELECT 1 as test")).fetchone()
                return {
                    'status': 'healthy',
                    'connected': True,
                    'test_query': bool(result)
                }
        except SQLAlchemyError as e:
            return {
                'status': 'error',
                'message': f'Health check failed: {str(e)}'
            }


class BaseRepository(Generic[T]):
    """
    Base repository class for database operations.

    Read helpers shared by every cache table.
    """

    def __init__(self, db: DatabaseManager, model_class: Type[T]):
        self.db = db
        self.model_class = model_class

    def get_all(self, limit: int = 100, offset: int = 0) -> List[T]:
        """Get all records with pagination."""
        if not self.db.is_connected:
            return []

        try:
            with self.db.get_session() as session:
                rows = session.query(self.model_class).offset(offset).limit(limit).all()
                session.expunge_all()
                return rows
        except SQLAlchemyError as e:
            logger.error(f"Error getting all {self.model_class.__name__}: {e}")
            return []

    def count(self) -> int:
        """Get total count of records."""
        if not self.db.is_connected:
            return 0

        try:
            with self.db.get_session() as session:
                return session.query(self.model_class).count()
        except SQLAlchemyError as e:
            logger.error(f"Error counting {self.model_class.__name__}: {e}")
            return 0


_db: Optional[DatabaseManager] = None
_db_lock = threading.Lock()


def cache_url(cache_dir: Optional[Path]) -> str:
    """sqlite URL of the tower cache inside cache_dir, or '' when disabled."""
    if cache_dir is None:
        return ""
    return str(Path(cache_dir) / CACHE_FILE)


def get_database() -> Optional[DatabaseManager]:
    """
    The connected tower cache database, or None when caching is disabled.

    The manager is created on first use from TATECOH_CACHE_DIR.
    """
    global _db
    with _db_lock:
        if _db is None:
            url = cache_url(config.get_cache_dir())
            if not url:
                return None
            _db = DatabaseManager(url)
            if not _db.connect():
                _db = None
                return None
        return _db


def set_database(db: Optional[DatabaseManager]) -> None:
    """Install a database manager (or None to disable the cache)."""
    global _db
    with _db_lock:
        if _db is not None and _db is not db:
            _db.disconnect()
        _db = db


def close_database():
    """Close database connection during application shutdown."""
    set_database(None)
