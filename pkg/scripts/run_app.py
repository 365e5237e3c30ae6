#!/usr/bin/env python3
"""
connspace Application Launcher

This script provides a simple menu to start the FastAPI application
or run a quick analysis from the command line.
"""

import subprocess
import sys


def print_menu():
    print("=" * 60)
    print("          connspace Control Panel")
    print("=" * 60)
    print()
    print("Choose an option:")
    print()
    print("1. Start FastAPI Web Application")
    print("   - JSON API for analyses and constructions")
    print("   - Access at http://localhost:8000/docs")
    print()
    print("2. Analyse a .space file")
    print("   - Runs `connspace info` on a file")
    print()
    print("3. Print a catalog space")
    print("   - discrete, indiscrete, brunnian, v or order")
    print()
    print("4. Exit")
    print()


def run_fastapi():
    """Start the FastAPI application"""
    print("Starting FastAPI application...")
    print("Visit http://localhost:8000/docs to browse the API")
    print("Press Ctrl+C to stop the server")
    print("-" * 60)

    try:
        subprocess.run([sys.executable, "-m", "connspace.main"], check=True)
    except KeyboardInterrupt:
        print("\nApplication stopped by user.")
    except subprocess.CalledProcessError as e:
        print(f"Error running FastAPI application: {e}")


def run_cli(arguments):
    try:
        subprocess.run([sys.executable, "-m", "connspace.cli", *arguments], check=False)
    except KeyboardInterrupt:
        print("\nStopped by user.")


def run_info():
    """Print the invariants of a space file"""
    path = input("Path to a .space file: ").strip()
    if not path:
        print("No file entered.")
        return
    print("-" * 60)
    run_cli(["info", path])


def run_catalog():
    """Print a standard space in the .space format"""
    name = input("Space (discrete/indiscrete/brunnian/v/order): ").strip()
    size = input("Number of points: ").strip()
    if not name or not size:
        print("Both a name and a size are required.")
        return
    print("-" * 60)
    run_cli(["catalog", name, size])


def main():
    """Main menu loop"""
    while True:
        print_menu()

        try:
            choice = input("Enter your choice (1-4): ").strip()

            if choice == "1":
                run_fastapi()
            elif choice == "2":
                run_info()
            elif choice == "3":
                run_catalog()
            elif choice == "4":
                print("Goodbye!")
                sys.exit(0)
            else:
                print("Invalid choice. Please enter 1, 2, 3 or 4.")

            input("\nPress Enter to continue...")
            print("\n" * 2)

        except KeyboardInterrupt:
            print("\n\nGoodbye!")
            sys.exit(0)
        except EOFError:
            print("\nGoodbye!")
            sys.exit(0)


if __name__ == "__main__":
    main()
