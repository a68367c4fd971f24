from polyzeta.cli import main

main()
