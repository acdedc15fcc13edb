# dgc - 行列式方法与有界高度有理点
__version__ = "0.1.0"
