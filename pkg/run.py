"""Entry point for running the application."""
from dotenv import load_dotenv

from src.cli import app

# Load environment variables
load_dotenv()

if __name__ == "__main__":
    app()
