from weylseries.cli import main

main()
