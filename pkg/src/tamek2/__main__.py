from tamek2.cli import main

main()
