#!/usr/bin/env python3
"""
Environment check script for ComplexCompose.
Verifies the interpreter, the numerical stack and the bundled catalog.
"""

import os
import sys

project_root = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, project_root)

def check_python_version():
    """Check if Python version is sufficient."""
    version = sys.version_info
    if version.major < 3 or (version.major == 3 and version.minor < 9):
        print(f"❌ Python {version.major}.{version.minor} detected. Python 3.9+ is required.")
        return False
    print(f"✅ Python {version.major}.{version.minor}.{version.micro} - OK")
    return True

def check_python_packages():
    """Check if required Python packages are installed."""
    required_packages = [
        'numpy',
        'scipy',
        'dotenv',  # python-dotenv is imported as dotenv
        'pytest'
    ]

    missing_packages = []
    for package in required_packages:
        try:
            __import__(package)
            print(f"✅ {package} - OK")
        except ImportError:
            print(f"❌ {package} - Missing")
            missing_packages.append(package)

    if missing_packages:
        print(f"\n   To install missing packages:")
        print(f"   pip install -r requirements.txt")
        return False

    return True

def check_catalog():
    """Verify every bundled coefficient set against its order conditions."""
    try:
        from coefficients.catalog import bundled_sets, verify_coefficient_set
    except ImportError as e:
        print(f"❌ Catalog could not be imported: {e}")
        return False

    all_passed = True
    for coefficient_set in bundled_sets():
        report = verify_coefficient_set(coefficient_set)
        if report.passed:
            print(f"✅ {coefficient_set.name} - max residual {report.max_residual:.1e}")
        else:
            print(f"❌ {coefficient_set.name} - {'; '.join(report.failures())}")
            all_passed = False
    return all_passed

def main():
    """Run all environment checks."""
    print("ComplexCompose - Environment Check")
    print("=" * 40)

    checks = [
        check_python_version,
        check_python_packages,
        check_catalog
    ]

    all_passed = True
    for check in checks:
        if not check():
            all_passed = False
            break
        print()

    if all_passed:
        print("🎉 All checks passed!")
        print("\n   To list the methods:")
        print("   python main.py catalog --verify")
    else:
        print("❌ Some checks failed. Please install the missing dependencies.")
        print("   See the README.md file for detailed installation instructions.")
        sys.exit(1)

if __name__ == "__main__":
    main()
